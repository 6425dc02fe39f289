#include "cmk/congmon.hpp"

#include <algorithm>

namespace cmk {

void validate_modulus(const FieldSpec& f, const Modulus& m) {
  if (!ideal_is_valid(f, m.finite)) throw input_error("modulus.finite is not an ideal");
  for (size_t i = 0; i < m.infinite.size(); ++i) {
    int w = m.infinite[i];
    if (w < 0 || w >= f.real_places)
      throw input_error("modulus.infinite names a place the field does not have");
    if (i > 0 && m.infinite[i - 1] >= w)
      throw input_error("modulus.infinite must be strictly increasing");
  }
}

AlgInt ResidueGroup::reduce_residue(const AlgInt& z) const {
  const IdealRep& m0 = modulus.finite;
  AlgInt r = z;
  if (!field.is_rational()) {
    Int q = fdiv(r.y, m0.c);
    r.x -= q * m0.b;
    r.y -= q * m0.c;
  } else {
    check_internal(r.y == 0, "rational residue with omega part");
  }
  r.x = fmod(r.x, m0.a);
  return r;
}

bool ResidueGroup::residue_is_unit(const AlgInt& z) const {
  AlgInt r = reduce_residue(z);
  return unit_index.count({r.x, r.y}) > 0;
}

GroupElem ResidueGroup::log(const std::vector<int>& signs, const AlgInt& residue) const {
  check_internal(static_cast<int>(signs.size()) == sign_count, "sign vector length");
  AlgInt r = reduce_residue(residue);
  auto it = unit_index.find({r.x, r.y});
  if (it == unit_index.end()) throw input_error("residue is not a unit mod m0");
  const GroupElem& ucoords = unit_structure.coords[it->second];
  GroupElem raw;
  raw.coords.reserve(sign_count + ucoords.coords.size());
  for (int s : signs) {
    check_internal(s == 1 || s == -1, "signs must be +-1");
    raw.coords.push_back(s == 1 ? 0 : 1);
  }
  raw.coords.insert(raw.coords.end(), ucoords.coords.begin(), ucoords.coords.end());
  return apply_hom(raw_to_group, raw);
}

GroupElem ResidueGroup::log_element(const AlgInt& a) const {
  std::vector<int> signs;
  for (int w : modulus.infinite) signs.push_back(embedding_sign(field, a, w));
  return log(signs, a);
}

std::vector<std::pair<std::vector<int>, AlgInt>> ResidueGroup::coset_reps() const {
  std::vector<std::pair<std::vector<int>, AlgInt>> out(to_long(group.order()));
  std::vector<bool> seen(out.size(), false);
  int nsigns = 1 << sign_count;
  for (int sbits = 0; sbits < nsigns; ++sbits) {
    std::vector<int> signs(sign_count);
    for (int i = 0; i < sign_count; ++i) signs[i] = (sbits >> i) & 1 ? -1 : 1;
    for (const auto& u : unit_reps) {
      GroupElem e = log(signs, u);
      // Index the element by its mixed-radix coordinates.
      long idx = 0;
      for (int i = 0; i < group.dim(); ++i)
        idx = idx * to_long(group.factors[i]) + to_long(e.coords[i]);
      if (!seen[idx]) {
        seen[idx] = true;
        out[idx] = {signs, u};
      }
    }
  }
  for (bool s : seen) check_internal(s, "coset enumeration incomplete");
  return out;
}

ResidueGroup residue_group(const FieldSpec& f, const Modulus& m) {
  validate_modulus(f, m);
  if (ideal_norm(m.finite) > kMaxResidueNorm)
    throw budget_error("modulus norm exceeds the residue enumeration budget");
  ResidueGroup rg;
  rg.field = f;
  rg.modulus = m;
  rg.sign_count = static_cast<int>(m.infinite.size());

  const IdealRep& m0 = m.finite;
  if (ideal_norm(m0) == 1) {
    rg.unit_reps = {AlgInt{0, 0}};
    rg.unit_index[{Int(0), Int(0)}] = 0;
    rg.unit_structure = abelian_structure(1, 0, [](int, int) { return 0; });
  } else {
    // Enumerate unit residues of R/m0.
    for (Int v = 0; v < (f.is_rational() ? Int(1) : m0.c); ++v) {
      for (Int u = 0; u < m0.a; ++u) {
        AlgInt z{u, v};
        if (alg_is_zero(z)) continue;
        if (!ideals_coprime(f, principal_ideal(f, z), m0)) continue;
        rg.unit_index[{z.x, z.y}] = static_cast<int>(rg.unit_reps.size());
        rg.unit_reps.push_back(z);
      }
    }
    check_internal(!rg.unit_reps.empty(), "empty unit group");
    auto mul = [&rg, &f](int i, int j) {
      AlgInt prod = rg.reduce_residue(alg_mul(f, rg.unit_reps[i], rg.unit_reps[j]));
      auto it = rg.unit_index.find({prod.x, prod.y});
      check_internal(it != rg.unit_index.end(), "unit product not a unit");
      return it->second;
    };
    AlgInt one = rg.reduce_residue(AlgInt{1, 0});
    rg.unit_structure = abelian_structure(static_cast<int>(rg.unit_reps.size()),
                                          rg.unit_index.at({one.x, one.y}), mul);
  }

  // Total group: sign bits (order 2 each) plus the unit group.
  const FgAbGroup& ug = rg.unit_structure.group;
  int total = rg.sign_count + ug.dim();
  IMat rels = IMat::Zero(total, total);
  for (int i = 0; i < rg.sign_count; ++i) rels(i, i) = 2;
  for (int j = 0; j < ug.dim(); ++j)
    rels(rg.sign_count + j, rg.sign_count + j) = ug.factors[j];
  PresentedGroup p = group_from_relations(total, rels);
  rg.group = p.group;
  rg.raw_to_group = p.projection;
  Int expect = Int(1) << rg.sign_count;
  expect *= ug.order();
  check_internal(rg.group.order() == expect, "residue group order");
  return rg;
}

CongruenceMonoidSpec make_spec(const FieldSpec& f, const Modulus& m,
                               const GammaDesc& gamma) {
  CongruenceMonoidSpec spec;
  spec.field = f;
  spec.modulus = m;
  spec.gamma_desc = gamma;
  spec.residues = std::make_shared<const ResidueGroup>(residue_group(f, m));
  switch (gamma.kind) {
    case GammaDesc::Kind::Trivial:
      break;
    case GammaDesc::Kind::Full:
      for (int i = 0; i < spec.residues->group.dim(); ++i) {
        GroupElem e = zero_elem(spec.residues->group);
        e.coords[i] = 1;
        spec.gamma.push_back(e);
      }
      break;
    case GammaDesc::Kind::Generators:
      for (const auto& g : gamma.generators)
        spec.gamma.push_back(spec.residues->log(g.signs, g.residue));
      break;
  }
  return spec;
}

bool in_monoid(const CongruenceMonoidSpec& spec, const AlgInt& a) {
  if (alg_is_zero(a)) throw input_error("monoid membership of zero");
  if (!ideals_coprime(spec.field, principal_ideal(spec.field, a), spec.modulus.finite))
    return false;
  GroupElem cls = spec.residues->log_element(a);
  return in_subgroup(spec.residues->group, spec.gamma, cls);
}

std::vector<AlgInt> torsion_units(const FieldSpec& f) {
  if (f.kind == FieldKind::Quadratic && f.d == -1)
    return {AlgInt{1, 0}, AlgInt{0, 1}, AlgInt{-1, 0}, AlgInt{0, -1}};
  if (f.kind == FieldKind::Quadratic && f.d == -3)
    return {AlgInt{1, 0},  AlgInt{0, 1},  AlgInt{-1, 1},
            AlgInt{-1, 0}, AlgInt{0, -1}, AlgInt{1, -1}};
  return {AlgInt{1, 0}, AlgInt{-1, 0}};
}

std::vector<AlgInt> ring_unit_generators(const FieldSpec& f) {
  std::vector<AlgInt> out;
  if (f.kind == FieldKind::Quadratic && f.d == -1)
    out.push_back(AlgInt{0, 1});
  else if (f.kind == FieldKind::Quadratic && f.d == -3)
    out.push_back(AlgInt{0, 1});  // a primitive sixth root of unity
  else
    out.push_back(AlgInt{-1, 0});
  if (f.is_real_quadratic()) out.push_back(fundamental_unit(f));
  return out;
}

RootsOfUnity roots_of_unity_in_monoid(const CongruenceMonoidSpec& spec) {
  RootsOfUnity out;
  for (const auto& zeta : torsion_units(spec.field))
    if (in_monoid(spec, zeta)) out.mu.push_back(zeta);
  out.count = static_cast<long>(out.mu.size());
  return out;
}

RayClassData ray_class_group(const CongruenceMonoidSpec& spec) {
  RayClassData rcd;
  rcd.spec = spec;
  const FieldSpec& f = spec.field;
  const ResidueGroup& rg = *spec.residues;

  // U = (R/m)^* / (Gamma * [R^*]_m).
  std::vector<GroupElem> killers = spec.gamma;
  for (const auto& u : ring_unit_generators(f)) killers.push_back(rg.log_element(u));
  PresentedGroup uq = subgroup_quotient(rg.group, killers);
  rcd.u_group = uq.group;
  rcd.res_to_u = uq.projection;

  rcd.cl = class_group(f);
  const int s = rcd.cl.group.dim();
  for (int j = 0; j < s; ++j) {
    IdealRep q = rcd.cl.generator_ideals[j];
    // Generators must avoid the support of m0; replace by an equivalent
    // prime from the representative table if needed.
    if (!ideals_coprime(f, q, spec.modulus.finite)) {
      bool fixed = false;
      for (const auto& [coords, rep] : rcd.cl.class_representatives) {
        GroupElem want = zero_elem(rcd.cl.group);
        want.coords[j] = 1;
        if (coords == want && ideals_coprime(f, rep, spec.modulus.finite)) {
          q = rep;
          fixed = true;
          break;
        }
      }
      check_internal(fixed, "no m0-coprime ideal represents a class generator");
    }
    rcd.q_ideals.push_back(q);
    rcd.q_orders.push_back(rcd.cl.group.factors[j]);
  }

  // Present C on the generators of U followed by the q_j.
  const int t = rcd.u_group.dim();
  IMat rels = IMat::Zero(t + s, t + s);
  for (int i = 0; i < t; ++i) rels(i, i) = rcd.u_group.factors[i];
  for (int j = 0; j < s; ++j) {
    Int dj = rcd.q_orders[j];
    check_internal(dj > 0, "class group factor must be finite");
    IdealRep power = ideal_pow(f, rcd.q_ideals[j], dj);
    auto gen = is_principal_with_generator(f, power);
    check_internal(gen.has_value(), "q^d must be principal");
    GroupElem img = apply_hom(rcd.res_to_u, rg.log_element(*gen));
    for (int i = 0; i < t; ++i) rels(t + j, i) = -img.coords[i];
    rels(t + j, t + j) = dj;
  }
  PresentedGroup cp = group_from_relations(t + s, rels);
  rcd.group = cp.group;
  rcd.assemble = cp.projection;

  for (int i = 0; i < t; ++i) {
    GroupElem raw;
    raw.coords.assign(t + s, Int(0));
    raw.coords[i] = 1;
    rcd.u_part.push_back(apply_hom(rcd.assemble, raw));
  }

  // Exact-sequence count: #C = h * #U.
  Int expected = rcd.cl.group.order() * rcd.u_group.order();
  check_internal(rcd.group.order() == expected, "ray class group order mismatch");
  return rcd;
}

GroupElem RayClassData::class_of(const IdealRep& a) const {
  const FieldSpec& f = spec.field;
  if (!ideals_coprime(f, a, spec.modulus.finite))
    throw input_error("class_of requires an ideal coprime to m0");
  if (group.is_trivial()) return zero_elem(group);

  GroupElem x = cl.classify(a);
  IdealRep c = a;
  std::vector<Int> ys;
  for (size_t j = 0; j < q_ideals.size(); ++j) {
    Int yj = fmod(-x.coords[j], q_orders[j]);
    ys.push_back(yj);
    if (yj > 0) c = ideal_mul(f, c, ideal_pow(f, q_ideals[j], yj));
  }
  auto gen = is_principal_with_generator(f, c);
  check_internal(gen.has_value(), "q-adjusted ideal must be principal");
  GroupElem u = apply_hom(res_to_u, spec.residues->log_element(*gen));

  GroupElem raw;
  raw.coords = u.coords;
  for (const Int& yj : ys) raw.coords.push_back(-yj);
  return apply_hom(assemble, raw);
}

GroupElem RayClassData::class_of_element(const AlgInt& a) const {
  const FieldSpec& f = spec.field;
  if (!ideals_coprime(f, principal_ideal(f, a), spec.modulus.finite))
    throw input_error("class_of requires an element coprime to m0");
  GroupElem u = apply_hom(res_to_u, spec.residues->log_element(a));
  GroupElem raw;
  raw.coords = u.coords;
  raw.coords.resize(u.coords.size() + q_ideals.size(), Int(0));
  return apply_hom(assemble, raw);
}

Int f_order(const RayClassData& rcd, const PrimeAbove& p) {
  if (!ideals_coprime(rcd.spec.field, p.rep, rcd.spec.modulus.finite))
    throw input_error("f_order requires a prime away from m0");
  if (rcd.group.is_trivial()) return 1;
  auto ord = element_order(rcd.group, rcd.class_of(p.rep));
  check_internal(ord.has_value(), "class must have finite order");
  return *ord;
}

FOrderVerdict class_fields_equal_heuristic(const CongruenceMonoidSpec& a,
                                           const CongruenceMonoidSpec& b,
                                           const Int& prime_bound) {
  if (!(a.field == b.field)) throw input_error("class-field comparison needs one field");
  FOrderVerdict out;
  out.bound = prime_bound;
  RayClassData ra = ray_class_group(a);
  RayClassData rb = ray_class_group(b);
  for (auto p : primes_up_to(static_cast<std::uint64_t>(to_long(prime_bound)))) {
    Int P(static_cast<long>(p));
    for (const auto& pa : split_type(a.field, P)) {
      if (ideal_norm(pa.rep) > prime_bound) continue;
      if (!ideals_coprime(a.field, pa.rep, a.modulus.finite)) continue;
      if (!ideals_coprime(b.field, pa.rep, b.modulus.finite)) continue;
      Int fa = f_order(ra, pa);
      Int fb = f_order(rb, pa);
      if (fa != fb) {
        out.equal_up_to_bound = false;
        out.witness = FOrderMismatch{P, pa.index, fa, fb};
        return out;
      }
    }
  }
  return out;
}

std::vector<IdealRep> ideals_up_to_norm(const FieldSpec& f, const Int& bound) {
  std::vector<IdealRep> out;
  if (f.is_rational()) {
    for (Int n = 1; n <= bound; ++n) out.push_back(rational_ideal(n));
    return out;
  }
  std::vector<IdealRep> all;
  for (Int c = 1; c * c <= bound; ++c) {
    for (Int ap = 1; ap * c * c <= bound; ++ap) {
      for (Int bp = 0; bp < ap; ++bp) {
        IdealRep cand{ap * c, bp * c, c};
        if (ideal_is_valid(f, cand)) all.push_back(cand);
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const IdealRep& x, const IdealRep& y) {
    return std::tuple(ideal_norm(x), x.a, x.b, x.c) <
           std::tuple(ideal_norm(y), y.a, y.b, y.c);
  });
  return all;
}

MonoidVerdict monoid_class_field_condition(const CongruenceMonoidSpec& a,
                                           const CongruenceMonoidSpec& b,
                                           const Int& norm_bound) {
  if (!(a.field == b.field)) throw input_error("monoid comparison needs one field");
  MonoidVerdict out;
  out.bound = norm_bound;
  const FieldSpec& f = a.field;

  // Saturated membership [g] in Gamma * [R^*]_m depends only on the ideal.
  auto saturated = [&f](const CongruenceMonoidSpec& s) {
    std::vector<GroupElem> gens = s.gamma;
    for (const auto& u : ring_unit_generators(f))
      gens.push_back(s.residues->log_element(u));
    return gens;
  };
  std::vector<GroupElem> satA = saturated(a), satB = saturated(b);

  for (const IdealRep& I : ideals_up_to_norm(f, norm_bound)) {
    if (!ideals_coprime(f, I, a.modulus.finite)) continue;
    if (!ideals_coprime(f, I, b.modulus.finite)) continue;
    auto gen = is_principal_with_generator(f, I);
    if (!gen) continue;
    bool inA = in_subgroup(a.residues->group, satA, a.residues->log_element(*gen));
    bool inB = in_subgroup(b.residues->group, satB, b.residues->log_element(*gen));
    if (inA != inB) {
      out.equal_up_to_bound = false;
      out.witness = *gen;
      out.witness_in = inA ? 0 : 1;
      return out;
    }
  }
  return out;
}

CongruenceMonoidSpec conjugate_spec(const CongruenceMonoidSpec& spec) {
  const FieldSpec& f = spec.field;
  if (f.is_rational()) return spec;
  Modulus m;
  m.finite = ideal_conj(f, spec.modulus.finite);
  for (int w : spec.modulus.infinite) m.infinite.push_back(1 - w);
  std::sort(m.infinite.begin(), m.infinite.end());

  GammaDesc gd;
  gd.kind = spec.gamma_desc.kind;
  if (gd.kind == GammaDesc::Kind::Generators) {
    for (const auto& g : spec.gamma_desc.generators) {
      GammaGenerator cg;
      cg.residue = alg_conj(f, g.residue);
      // Sign at the new place w is the old sign at place 1-w; the place
      // list is traversed in the new sorted order.
      std::vector<std::pair<int, int>> old_signs;  // (place, sign)
      for (size_t i = 0; i < spec.modulus.infinite.size(); ++i)
        old_signs.push_back({spec.modulus.infinite[i], g.signs[i]});
      for (int w : m.infinite) {
        int src = 1 - w;
        for (auto& [pl, sg] : old_signs)
          if (pl == src) cg.signs.push_back(sg);
      }
      gd.generators.push_back(cg);
    }
  }
  return make_spec(f, m, gd);
}

GaloisVerdict is_class_field_galois_heuristic(const CongruenceMonoidSpec& spec,
                                              const Int& norm_bound) {
  GaloisVerdict out;
  out.bound = norm_bound;
  if (spec.field.is_rational()) return out;  // vacuously Galois
  CongruenceMonoidSpec sigma = conjugate_spec(spec);
  MonoidVerdict mv = monoid_class_field_condition(spec, sigma, norm_bound);
  out.galois_up_to_bound = mv.equal_up_to_bound;
  out.witness = mv.witness;
  return out;
}

}  // namespace cmk
