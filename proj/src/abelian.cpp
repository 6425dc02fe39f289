#include "cmk/abelian.hpp"

#include <algorithm>

namespace cmk {

FgAbGroup FgAbGroup::from_factors(std::vector<Int> raw) {
  std::vector<Int> torsion;
  int zeros = 0;
  for (auto& d : raw) {
    Int a = abs_int(d);
    if (a == 0)
      ++zeros;
    else if (a != 1)
      torsion.push_back(a);
  }
  // Canonicalize an arbitrary direct sum into a divisibility chain by
  // repeated (gcd, lcm) replacement; the isomorphism type is preserved.
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < torsion.size(); ++i)
      for (size_t j = i + 1; j < torsion.size(); ++j) {
        if (fmod(torsion[j], torsion[i]) == 0) continue;
        Int g = gcd_int(torsion[i], torsion[j]);
        torsion[j] = torsion[i] / g * torsion[j];
        torsion[i] = g;
        changed = true;
      }
    std::sort(torsion.begin(), torsion.end());
    std::erase(torsion, Int(1));
  }
  FgAbGroup g;
  g.factors = std::move(torsion);
  g.factors.insert(g.factors.end(), zeros, Int(0));
  return g;
}

FgAbGroup FgAbGroup::free_group(int rank) {
  FgAbGroup g;
  g.factors.assign(rank, Int(0));
  return g;
}

int FgAbGroup::rank() const {
  return static_cast<int>(std::count(factors.begin(), factors.end(), Int(0)));
}

Int FgAbGroup::torsion_order() const {
  Int t = 1;
  for (const auto& d : factors)
    if (d != 0) t *= d;
  return t;
}

Int FgAbGroup::order() const { return rank() > 0 ? Int(0) : torsion_order(); }

GroupElem reduce_elem(const FgAbGroup& g, GroupElem e) {
  check_internal(static_cast<int>(e.coords.size()) == g.dim(), "element dim mismatch");
  for (int i = 0; i < g.dim(); ++i)
    if (g.factors[i] != 0) e.coords[i] = fmod(e.coords[i], g.factors[i]);
  return e;
}

GroupElem zero_elem(const FgAbGroup& g) {
  GroupElem e;
  e.coords.assign(g.dim(), Int(0));
  return e;
}

GroupElem add_elem(const FgAbGroup& g, const GroupElem& a, const GroupElem& b) {
  GroupElem e = a;
  for (int i = 0; i < g.dim(); ++i) e.coords[i] += b.coords[i];
  return reduce_elem(g, std::move(e));
}

GroupElem neg_elem(const FgAbGroup& g, const GroupElem& a) {
  GroupElem e = a;
  for (auto& c : e.coords) c = -c;
  return reduce_elem(g, std::move(e));
}

GroupElem scale_elem(const FgAbGroup& g, const Int& n, const GroupElem& a) {
  GroupElem e = a;
  for (auto& c : e.coords) c *= n;
  return reduce_elem(g, std::move(e));
}

bool is_zero_elem(const GroupElem& a) {
  return std::all_of(a.coords.begin(), a.coords.end(),
                     [](const Int& c) { return c == 0; });
}

GroupHom identity_hom(const FgAbGroup& g) {
  return GroupHom{g, g, IMat::Identity(g.dim(), g.dim())};
}

GroupHom compose(const GroupHom& second, const GroupHom& first) {
  check_internal(first.codomain == second.domain, "hom composition mismatch");
  return GroupHom{first.domain, second.codomain, second.matrix * first.matrix};
}

GroupElem apply_hom(const GroupHom& h, const GroupElem& e) {
  check_internal(static_cast<int>(e.coords.size()) == h.domain.dim(),
                 "hom applied to wrong dimension");
  GroupElem out = zero_elem(h.codomain);
  for (int i = 0; i < h.codomain.dim(); ++i)
    for (int j = 0; j < h.domain.dim(); ++j)
      out.coords[i] += h.matrix(i, j) * e.coords[j];
  return reduce_elem(h.codomain, std::move(out));
}

bool is_well_defined(const GroupHom& h) {
  for (int j = 0; j < h.domain.dim(); ++j) {
    if (h.domain.factors[j] == 0) continue;
    GroupElem img = zero_elem(h.codomain);
    for (int i = 0; i < h.codomain.dim(); ++i)
      img.coords[i] = h.matrix(i, j) * h.domain.factors[j];
    if (!is_zero_elem(reduce_elem(h.codomain, std::move(img)))) return false;
  }
  return true;
}

namespace {

// Inverse of a unimodular matrix via its Smith decomposition.
IMat unimodular_inverse(const IMat& u) {
  SmithResult su = smith_normal_form(u);
  check_internal(su.s == IMat::Identity(su.s.rows(), su.s.cols()),
                 "unimodular matrix expected");
  return su.v * su.u;  // u' u v = I  =>  u^-1 = v u'
}

}  // namespace

PresentedGroup group_from_relations(int num_gens, const IMat& relations) {
  check_internal(relations.cols() == num_gens || relations.size() == 0,
                 "relation matrix has wrong number of columns");
  IMat cols = relations.transpose();  // columns generate the relation lattice
  if (cols.size() == 0) cols = IMat::Zero(num_gens, 0);
  SmithResult snf = smith_normal_form(cols);
  const int k = static_cast<int>(std::min(cols.rows(), cols.cols()));

  std::vector<Int> raw(num_gens, Int(0));
  for (int i = 0; i < k; ++i) raw[i] = snf.s(i, i);

  // Quotient coordinates are y = U x; keep the coordinates whose factor
  // survives normalization (zeros and non-units).
  std::vector<int> keep;
  for (int i = 0; i < num_gens; ++i)
    if (raw[i] != 1) keep.push_back(i);
  // Order torsion ascending, zeros last, to match normalized factors.
  std::stable_sort(keep.begin(), keep.end(), [&](int a, int b) {
    const Int& da = raw[a];
    const Int& db = raw[b];
    if ((da == 0) != (db == 0)) return db == 0;
    return da < db;
  });

  FgAbGroup group = FgAbGroup::from_factors(raw);
  check_internal(group.dim() == static_cast<int>(keep.size()), "factor bookkeeping");

  IMat proj(group.dim(), num_gens);
  for (int r = 0; r < group.dim(); ++r) proj.row(r) = snf.u.row(keep[r]);

  IMat uinv = unimodular_inverse(snf.u);
  IMat sect(num_gens, group.dim());
  for (int c = 0; c < group.dim(); ++c) sect.col(c) = uinv.col(keep[c]);

  FgAbGroup free = FgAbGroup::free_group(num_gens);
  PresentedGroup out;
  out.projection = GroupHom{free, group, std::move(proj)};
  out.section = GroupHom{group, free, std::move(sect)};
  out.group = std::move(group);
  return out;
}

std::optional<Int> element_order(const FgAbGroup& g, const GroupElem& e) {
  GroupElem r = reduce_elem(g, e);
  Int n = 1;
  for (int i = 0; i < g.dim(); ++i) {
    if (g.factors[i] == 0) {
      if (r.coords[i] != 0) return std::nullopt;
      continue;
    }
    if (r.coords[i] == 0) continue;
    Int d = g.factors[i] / gcd_int(g.factors[i], r.coords[i]);
    n = lcm_int(n, d);
  }
  return n;
}

namespace {

// Columns of the torsion relation lattice diag(d_i) restricted to torsion
// coordinates.
IMat torsion_relation_columns(const FgAbGroup& g) {
  std::vector<int> tors;
  for (int i = 0; i < g.dim(); ++i)
    if (g.factors[i] != 0) tors.push_back(i);
  IMat m = IMat::Zero(g.dim(), static_cast<int>(tors.size()));
  for (size_t j = 0; j < tors.size(); ++j) m(tors[j], static_cast<int>(j)) = g.factors[tors[j]];
  return m;
}

}  // namespace

KernelCokernel kernel_cokernel(const GroupHom& h) {
  const int k = h.domain.dim();
  const int l = h.codomain.dim();
  KernelCokernel out;

  // Cokernel: Z^l modulo the images of the domain generators and the
  // codomain torsion relations.
  IMat codrel = torsion_relation_columns(h.codomain);
  IMat cokrels(k + codrel.cols(), l);
  for (int j = 0; j < k; ++j) cokrels.row(j) = h.matrix.col(j).transpose();
  for (int j = 0; j < codrel.cols(); ++j) cokrels.row(k + j) = codrel.col(j).transpose();
  PresentedGroup cok = group_from_relations(l, cokrels);
  out.cokernel = cok.group;
  out.cokernel_projection = GroupHom{h.codomain, cok.group, cok.projection.matrix};

  // Kernel: L = { x in Z^k : M x lies in the codomain relation lattice },
  // then ker h = L / (torsion relations of the domain).
  IMat combined(l, k + codrel.cols());
  combined.leftCols(k) = h.matrix;
  combined.rightCols(codrel.cols()) = codrel;
  IMat ker = integer_kernel(combined);
  IMat lattice_gens = ker.topRows(k);  // columns generate L

  SmithResult snf = smith_normal_form(lattice_gens);
  int rank = 0;
  const int mn = static_cast<int>(std::min(lattice_gens.rows(), lattice_gens.cols()));
  for (int i = 0; i < mn; ++i)
    if (snf.s(i, i) != 0) ++rank;

  // Basis of L: columns b_i = s_i * (U^-1 e_i). Solving P z = c reduces to
  // componentwise division of U c.
  IMat uinv_cols = unimodular_inverse(snf.u);
  IMat basis(k, rank);
  for (int i = 0; i < rank; ++i) basis.col(i) = uinv_cols.col(i) * snf.s(i, i);

  // Express the domain torsion relations in the basis of L.
  IMat domrel = torsion_relation_columns(h.domain);
  IMat kerrels(domrel.cols(), rank);
  for (int j = 0; j < domrel.cols(); ++j) {
    IVec w = snf.u * domrel.col(j);
    for (int i = 0; i < rank; ++i) {
      check_internal(fmod(w(i), snf.s(i, i)) == 0, "domain relation not in kernel lattice");
      kerrels(j, i) = w(i) / snf.s(i, i);
    }
    for (int i = rank; i < static_cast<int>(w.size()); ++i)
      check_internal(w(i) == 0, "domain relation outside kernel lattice span");
  }
  PresentedGroup kerp = group_from_relations(rank, kerrels);
  out.kernel = kerp.group;
  out.kernel_embedding = GroupHom{out.kernel, h.domain, basis * kerp.section.matrix};
  check_internal(is_well_defined(out.kernel_embedding), "kernel embedding ill-defined");
  return out;
}

PresentedGroup subgroup_quotient(const FgAbGroup& g, const std::vector<GroupElem>& gens) {
  IMat rels(static_cast<int>(gens.size()) + g.dim(), g.dim());
  for (size_t r = 0; r < gens.size(); ++r) {
    check_internal(static_cast<int>(gens[r].coords.size()) == g.dim(),
                   "subgroup generator dim mismatch");
    for (int j = 0; j < g.dim(); ++j) rels(static_cast<int>(r), j) = gens[r].coords[j];
  }
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      rels(static_cast<int>(gens.size()) + i, j) = (i == j) ? g.factors[i] : Int(0);
  PresentedGroup q = group_from_relations(g.dim(), rels);
  q.projection.domain = g;
  check_internal(is_well_defined(q.projection), "quotient projection ill-defined");
  return q;
}

bool in_subgroup(const FgAbGroup& g, const std::vector<GroupElem>& gens,
                 const GroupElem& target) {
  // Solve sum x_j gens_j + sum y_i d_i e_i = target over Z.
  IMat rel = torsion_relation_columns(g);
  IMat a(g.dim(), static_cast<int>(gens.size()) + rel.cols());
  for (size_t j = 0; j < gens.size(); ++j)
    for (int i = 0; i < g.dim(); ++i) a(i, static_cast<int>(j)) = gens[j].coords[i];
  a.rightCols(rel.cols()) = rel;
  IVec b(g.dim());
  GroupElem t = reduce_elem(g, target);
  for (int i = 0; i < g.dim(); ++i) b(i) = t.coords[i];
  return solve_integer(a, b).has_value();
}

Int subgroup_order(const FgAbGroup& g, const std::vector<GroupElem>& gens) {
  check_internal(g.rank() == 0, "subgroup order in infinite group");
  PresentedGroup q = subgroup_quotient(g, gens);
  Int qo = q.group.order();
  check_internal(qo != 0, "quotient unexpectedly infinite");
  return g.order() / qo;
}

}  // namespace cmk
