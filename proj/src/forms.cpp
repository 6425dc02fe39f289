#include "cmk/quadfield.hpp"
#include "cmk/structure.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace cmk {

StructureResult abelian_structure(int n_elements, int identity_id,
                                  const std::function<int(int, int)>& mul) {
  std::vector<std::vector<Int>> raw(n_elements);
  std::vector<bool> known(n_elements, false);
  known[identity_id] = true;
  std::vector<int> gens;
  std::vector<std::vector<Int>> relations;

  for (int cand = 0; cand < n_elements; ++cand) {
    if (known[cand]) continue;
    gens.push_back(cand);
    const int k = static_cast<int>(gens.size());
    for (auto& v : raw) v.resize(k, 0);
    for (auto& r : relations) r.resize(k, 0);

    std::vector<bool> in_old = known;
    std::vector<int> old_ids;
    for (int i = 0; i < n_elements; ++i)
      if (in_old[i]) old_ids.push_back(i);

    int cur = identity_id;
    for (Int j = 1;; ++j) {
      cur = mul(cur, cand);
      if (in_old[cur]) {
        // cand^j lands back in the previous subgroup: that is the relation.
        std::vector<Int> rel = raw[cur];
        for (auto& v : rel) v = -v;
        rel[k - 1] = j;
        relations.push_back(std::move(rel));
        break;
      }
      for (int x : old_ids) {
        int y = mul(x, cur);
        check_internal(!in_old[y], "coset collision in structure scan");
        if (!known[y]) {
          known[y] = true;
          raw[y] = raw[x];
          raw[y][k - 1] = j;
        }
      }
      check_internal(j <= n_elements, "structure scan failed to close");
    }
  }

  const int k = static_cast<int>(gens.size());
  IMat rels(static_cast<int>(relations.size()), k);
  for (size_t i = 0; i < relations.size(); ++i)
    for (int j = 0; j < k; ++j) rels(static_cast<int>(i), j) = relations[i][j];
  PresentedGroup p = group_from_relations(k, rels);
  check_internal(p.group.order() == n_elements, "structure order mismatch");

  StructureResult out;
  out.group = p.group;
  out.generator_ids = gens;
  out.projection = p.projection;
  out.section = p.section;
  out.coords.resize(n_elements);
  for (int i = 0; i < n_elements; ++i) {
    check_internal(known[i], "element never reached in structure scan");
    GroupElem e;
    e.coords = raw[i];
    out.coords[i] = apply_hom(p.projection, e);
  }
  return out;
}

namespace {

struct Form {
  Int a, b, c;
  bool operator==(const Form&) const = default;
  auto key() const { return std::tuple<Int, Int, Int>(a, b, c); }
};

// Form of an oriented basis (e1, e2): N(x e1 + y e2) / norm.
Form form_of_basis(const FieldSpec& f, const AlgInt& e1, const AlgInt& e2,
                   const Int& norm) {
  AlgInt cross = alg_mul(f, e1, alg_conj(f, e2));
  Int A = alg_norm(f, e1), B = alg_trace(f, cross), C = alg_norm(f, e2);
  check_internal(fmod(A, norm) == 0 && fmod(B, norm) == 0 && fmod(C, norm) == 0,
                 "basis form must be integral");
  Form out{A / norm, B / norm, C / norm};
  check_internal(out.b * out.b - 4 * out.a * out.c == f.discriminant,
                 "form discriminant mismatch");
  return out;
}

Form form_of_ideal(const FieldSpec& f, const IdealRep& I) {
  return form_of_basis(f, AlgInt{I.a, 0}, AlgInt{I.b, I.c}, ideal_norm(I));
}

IdealRep ideal_of_form(const FieldSpec& f, const Form& q) {
  check_internal(q.a > 0, "ideal_of_form needs a positive leading coefficient");
  // Lattice a*Z + ((b + sqrt(D))/2) Z; the sign matches the basis
  // orientation used by form_of_ideal, so the two maps are inverse.
  Int x;
  if (fmod(f.d, 4) == 1)
    x = (q.b - 1) / 2;  // b is odd
  else
    x = Int(q.b) / 2;
  return ideal_from_generators(f, {AlgInt{q.a, 0}, AlgInt{x, 1}});
}

// --- positive definite reduction (D < 0) ---

Form reduce_definite(Form q) {
  check_internal(q.a > 0, "definite form must be positive");
  const Int D = q.b * q.b - 4 * q.a * q.c;
  for (;;) {
    Int t = fmod(q.b + q.a, 2 * q.a);
    Int b2 = t - q.a;  // b normalized into (-a, a]
    if (b2 != q.b) {
      q.b = b2;
      q.c = (q.b * q.b - D) / (4 * q.a);
    }
    if (q.a > q.c) {
      q = Form{q.c, -q.b, q.a};
      continue;
    }
    if (q.b < 0 && (q.a == q.c || q.b == -q.a)) q.b = -q.b;
    break;
  }
  return q;
}

// --- indefinite reduction and cycles (D > 0) ---

bool is_reduced_indefinite(const Form& q, const Int& D) {
  if (q.b <= 0 || q.b * q.b >= D) return false;
  Int twoa = 2 * abs_int(q.a);
  // |sqrt(D) - 2|a|| < b  <=>  2|a| - b < sqrt(D) and sqrt(D) < 2|a| + b.
  if (twoa - q.b > 0 && (twoa - q.b) * (twoa - q.b) >= D) return false;
  if ((twoa + q.b) * (twoa + q.b) <= D) return false;
  return true;
}

// One rho step: (a, b, c) -> (c, b', (b'^2 - D)/(4c)) with b' = -b mod 2|c|
// in the standard window. The basis transform is (e1, e2) -> (e2, -e1 +
// delta*e2) with delta = (b + b')/(2c), an SL2 move.
Form rho_step(const Form& q, const Int& D, Int* delta_out) {
  const Int c = q.c;
  check_internal(c != 0, "rho on a degenerate form");
  Int ac = abs_int(c);
  Int upper = ac * ac > D ? ac : isqrt(D);
  Int b2 = fmod(-q.b, 2 * ac);
  b2 += fdiv(upper - b2, 2 * ac) * 2 * ac;  // largest value <= upper in its class
  Int delta = (q.b + b2) / (2 * c);
  if (delta_out) *delta_out = delta;
  Int c2 = (b2 * b2 - D) / (4 * c);
  return Form{c, b2, c2};
}

struct TrackedForm {
  Form q;
  AlgInt e1, e2;
};

void rho_tracked(TrackedForm& t, const Int& D) {
  Int delta;
  t.q = rho_step(t.q, D, &delta);
  AlgInt ne1 = t.e2;
  AlgInt ne2 = alg_add(alg_neg(t.e1), AlgInt{delta * t.e2.x, delta * t.e2.y});
  t.e1 = ne1;
  t.e2 = ne2;
}

void reduce_tracked(TrackedForm& t, const Int& D) {
  for (int guard = 0; guard < 200000; ++guard) {
    if (is_reduced_indefinite(t.q, D)) return;
    rho_tracked(t, D);
  }
  throw internal_error("indefinite reduction did not terminate");
}

Form reduce_indefinite(Form q, const Int& D) {
  for (int guard = 0; guard < 200000; ++guard) {
    if (is_reduced_indefinite(q, D)) return q;
    q = rho_step(q, D, nullptr);
  }
  throw internal_error("indefinite reduction did not terminate");
}

std::vector<Form> enumerate_reduced_forms(const Int& D) {
  std::vector<Form> out;
  if (D < 0) {
    Int amax = isqrt(abs_int(D) / 3);
    for (Int a = 1; a <= amax; ++a) {
      for (Int b = -a + 1; b <= a; ++b) {
        if (fmod(b - D, 2) != 0) continue;
        Int num = b * b - D;
        if (fmod(num, 4 * a) != 0) continue;
        Int c = num / (4 * a);
        if (c < a) continue;
        if (b < 0 && (a == c || b == -a)) continue;
        out.push_back(Form{a, b, c});
      }
    }
  } else {
    Int sqD = isqrt(D);
    for (Int b = 1; b <= sqD; ++b) {
      if (fmod(b - D, 2) != 0) continue;
      Int num = b * b - D;
      if (fmod(num, 4) != 0) continue;
      Int atarget = abs_int(num) / 4;  // = |a*c|
      for (Int a = 1; a * a <= atarget; ++a) {
        if (fmod(atarget, a) != 0) continue;
        std::vector<Int> divs{a};
        if (atarget / a != a) divs.push_back(atarget / a);
        for (const Int& aa : divs) {
          Int cof = atarget / aa;
          for (const Int& sa : {Int(aa), Int(-aa)}) {
            Form q{sa, b, sa > 0 ? Int(-cof) : cof};
            if (is_reduced_indefinite(q, D)) out.push_back(q);
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Form& x, const Form& y) { return x.key() < y.key(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

struct ClassGroupData::Impl {
  FieldSpec field;
  Int D;
  std::map<std::tuple<Int, Int, Int>, int> form_to_class;
  std::vector<IdealRep> class_ideal;  // representative ideal per class id
  int n_classes = 0;
  StructureResult structure;

  // Wide groups over real quadratic fields project the narrow data.
  std::shared_ptr<const Impl> narrow_impl;
  GroupHom narrow_to_wide;

  int classify_id(const IdealRep& I) const {
    const Impl* base = narrow_impl ? narrow_impl.get() : this;
    Form q = form_of_ideal(base->field, I);
    q = base->D < 0 ? reduce_definite(q) : reduce_indefinite(q, base->D);
    auto it = base->form_to_class.find(q.key());
    check_internal(it != base->form_to_class.end(), "reduced form missing from class table");
    return it->second;
  }
};

namespace {

std::shared_ptr<const ClassGroupData::Impl> build_narrow_impl(const FieldSpec& f) {
  auto impl = std::make_shared<ClassGroupData::Impl>();
  impl->field = f;
  impl->D = f.discriminant;
  auto forms = enumerate_reduced_forms(impl->D);
  check_internal(!forms.empty(), "no reduced forms found");

  if (impl->D < 0) {
    impl->n_classes = static_cast<int>(forms.size());
    for (int i = 0; i < impl->n_classes; ++i) impl->form_to_class[forms[i].key()] = i;
    impl->class_ideal.resize(impl->n_classes);
    for (int i = 0; i < impl->n_classes; ++i)
      impl->class_ideal[i] = ideal_of_form(f, forms[i]);
  } else {
    std::map<std::tuple<Int, Int, Int>, int> seen;
    int nc = 0;
    for (const auto& q0 : forms) {
      if (seen.count(q0.key())) continue;
      int id = nc++;
      Form q = q0;
      for (int guard = 0;; ++guard) {
        check_internal(guard < 1000000, "rho cycle did not close");
        seen[q.key()] = id;
        q = rho_step(q, impl->D, nullptr);
        check_internal(is_reduced_indefinite(q, impl->D), "rho left the reduced set");
        if (q == q0) break;
      }
    }
    impl->n_classes = nc;
    impl->form_to_class = std::move(seen);
    impl->class_ideal.resize(nc);
    std::vector<bool> have(nc, false);
    for (const auto& q : forms) {
      int id = impl->form_to_class.at(q.key());
      if (!have[id] && q.a > 0) {
        have[id] = true;
        impl->class_ideal[id] = ideal_of_form(f, q);
      }
    }
    for (bool h : have) check_internal(h, "cycle without a positive-lead form");
  }

  const FieldSpec field = f;
  auto impl_raw = impl.get();
  int identity = impl->classify_id(unit_ideal());
  auto mul = [impl_raw, field](int x, int y) {
    return impl_raw->classify_id(
        ideal_mul(field, impl_raw->class_ideal[x], impl_raw->class_ideal[y]));
  };
  impl->structure = abelian_structure(impl->n_classes, identity, mul);
  return impl;
}

std::vector<std::pair<GroupElem, IdealRep>> least_norm_prime_reps(
    const FieldSpec& f, const ClassGroupData& cg) {
  Int order = cg.group.order();
  check_internal(order > 0, "class group must be finite");
  std::map<std::vector<Int>, IdealRep> found;
  for (std::uint64_t n = 2; found.size() < static_cast<size_t>(to_long(order)); ++n) {
    check_internal(n <= 2000000, "no prime representative below the scan cap");
    Int N(static_cast<long>(n));
    std::vector<PrimeAbove> primes;
    if (is_probable_prime(N)) {
      for (auto& pa : split_type(f, N))
        if (pa.f == 1) primes.push_back(pa);
    } else if (is_square(N) && is_probable_prime(isqrt(N))) {
      for (auto& pa : split_type(f, isqrt(N)))
        if (pa.f == 2) primes.push_back(pa);
    }
    for (const auto& pa : primes) {
      GroupElem cls = cg.classify(pa.rep);
      found.emplace(cls.coords, pa.rep);
    }
  }
  std::vector<std::pair<GroupElem, IdealRep>> out;
  for (auto& [coords, rep] : found) out.push_back({GroupElem{coords}, rep});
  return out;
}

std::vector<IdealRep> generator_ideals_for(const ClassGroupData& cg,
                                           const std::vector<GroupElem>& coords,
                                           const std::vector<IdealRep>& ideals) {
  std::vector<IdealRep> out;
  for (int j = 0; j < cg.group.dim(); ++j) {
    GroupElem want = zero_elem(cg.group);
    want.coords[j] = 1;
    bool ok = false;
    for (size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == want) {
        out.push_back(ideals[i]);
        ok = true;
        break;
      }
    }
    check_internal(ok, "no ideal realizes a class-group generator");
  }
  return out;
}

}  // namespace

GroupElem ClassGroupData::classify(const IdealRep& a) const {
  if (field.is_rational()) return GroupElem{};
  check_internal(ideal_is_valid(field, a), "classify of invalid ideal");
  int id = impl->classify_id(a);
  if (impl->narrow_impl)
    return apply_hom(impl->narrow_to_wide, impl->narrow_impl->structure.coords[id]);
  return impl->structure.coords[id];
}

ClassGroupData narrow_class_group(const FieldSpec& f) {
  ClassGroupData out;
  out.field = f;
  out.narrow = true;
  if (f.is_rational()) {
    out.group = FgAbGroup::trivial();
    out.class_representatives = {{GroupElem{}, rational_ideal(2)}};
    return out;
  }
  auto impl = build_narrow_impl(f);
  out.impl = impl;
  out.group = impl->structure.group;
  out.class_representatives = least_norm_prime_reps(f, out);
  std::vector<GroupElem> coords;
  std::vector<IdealRep> ideals;
  for (int i = 0; i < impl->n_classes; ++i) {
    coords.push_back(impl->structure.coords[i]);
    ideals.push_back(impl->class_ideal[i]);
  }
  out.generator_ideals = generator_ideals_for(out, coords, ideals);
  return out;
}

ClassGroupData class_group(const FieldSpec& f) {
  ClassGroupData narrow = narrow_class_group(f);
  if (!f.is_real_quadratic()) {
    narrow.narrow = false;
    return narrow;
  }
  AlgInt eps0 = fundamental_unit(f);
  if (alg_norm(f, eps0) == -1) {
    // Units of both norms exist, so wide and narrow agree.
    narrow.narrow = false;
    return narrow;
  }
  // Quotient by the narrow class of (sqrt(d)).
  AlgInt sqrt_d = fmod(f.d, 4) == 1 ? AlgInt{-1, 2} : AlgInt{0, 1};
  GroupElem neg = narrow.classify(principal_ideal(f, sqrt_d));
  PresentedGroup q = subgroup_quotient(narrow.group, {neg});

  auto impl = std::make_shared<ClassGroupData::Impl>();
  impl->field = f;
  impl->D = f.discriminant;
  impl->narrow_impl = narrow.impl;
  impl->narrow_to_wide = q.projection;

  ClassGroupData out;
  out.field = f;
  out.narrow = false;
  out.impl = impl;
  out.group = q.group;
  out.class_representatives = least_norm_prime_reps(f, out);
  std::vector<GroupElem> coords;
  std::vector<IdealRep> ideals;
  for (int i = 0; i < narrow.impl->n_classes; ++i) {
    coords.push_back(apply_hom(q.projection, narrow.impl->structure.coords[i]));
    ideals.push_back(narrow.impl->class_ideal[i]);
  }
  out.generator_ideals = generator_ideals_for(out, coords, ideals);
  return out;
}

namespace {

std::optional<AlgInt> principal_imaginary(const FieldSpec& f, const IdealRep& A) {
  Int target = ideal_norm(A);
  const Int D = f.discriminant;
  Int vmax = isqrt(4 * target / abs_int(D)) + 1;
  Int T = f.omega_trace();
  for (Int tv = 0; tv * A.c <= vmax; ++tv) {
    for (int sign = 0; sign < (tv == 0 ? 1 : 2); ++sign) {
      Int v = tv * A.c;
      if (sign == 1) v = -v;
      Int disc = D * v * v + 4 * target;
      if (disc < 0) continue;
      if (!is_square(disc)) continue;
      Int s = isqrt(disc);
      for (int pm = 0; pm < (s == 0 ? 1 : 2); ++pm) {
        Int u2 = -T * v;
        u2 += pm == 0 ? s : Int(-s);
        if (fmod(u2, 2) != 0) continue;
        AlgInt cand{u2 / 2, v};
        if (alg_is_zero(cand)) continue;
        if (!ideal_contains(f, A, cand)) continue;
        if (abs_int(alg_norm(f, cand)) != target) continue;
        if (principal_ideal(f, cand) == A) return cand;
      }
    }
  }
  return std::nullopt;
}

std::optional<AlgInt> principal_real(const FieldSpec& f, const IdealRep& A) {
  const Int D = f.discriminant;
  Int content = A.c;
  IdealRep prim{A.a / A.c, A.b / A.c, 1};

  TrackedForm fa{form_of_ideal(f, prim), AlgInt{prim.a, 0}, AlgInt{prim.b, 1}};
  reduce_tracked(fa, D);

  // Targets: the ring itself, and sqrt(d)*R for generators of negative norm.
  // Bases are ordered so that the orientation matches the HNF convention.
  AlgInt omega{0, 1};
  AlgInt sqrt_d = fmod(f.d, 4) == 1 ? AlgInt{-1, 2} : AlgInt{0, 1};
  struct Target {
    AlgInt e1, e2;
    AlgInt scale;  // the target lattice is (scale); generator = lambda*scale
    Int norm;
  };
  std::vector<Target> targets = {
      {AlgInt{1, 0}, omega, AlgInt{1, 0}, Int(1)},
      {alg_mul(f, sqrt_d, omega), sqrt_d, sqrt_d, abs_int(alg_norm(f, sqrt_d))},
  };
  for (const auto& tgt : targets) {
    TrackedForm th{form_of_basis(f, tgt.e1, tgt.e2, tgt.norm), tgt.e1, tgt.e2};
    reduce_tracked(th, D);
    Form start = th.q;
    for (int guard = 0;; ++guard) {
      check_internal(guard < 1000000, "principal cycle did not close");
      if (th.q == fa.q) {
        // The basis map th -> fa is multiplication by lambda = fa.e1/th.e1;
        // then prim = lambda * (scale), so the generator is lambda * scale.
        AlgInt lam_num = alg_mul(f, fa.e1, alg_conj(f, th.e1));
        Int lam_den = alg_norm(f, th.e1);
        AlgInt gen_num = alg_mul(f, lam_num, tgt.scale);
        if (lam_den != 0) {
          Int ad = abs_int(lam_den);
          if (fmod(gen_num.x, ad) == 0 && fmod(gen_num.y, ad) == 0) {
            AlgInt gen{gen_num.x / lam_den, gen_num.y / lam_den};
            if (!alg_is_zero(gen) && principal_ideal(f, gen) == prim) {
              AlgInt full = alg_mul(f, gen, AlgInt{content, 0});
              check_internal(principal_ideal(f, full) == A, "principal generator check");
              return full;
            }
          }
        }
      }
      rho_tracked(th, D);
      if (th.q == start) break;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<AlgInt> is_principal_with_generator(const FieldSpec& f, const IdealRep& A) {
  if (!ideal_is_valid(f, A)) throw input_error("is_principal: invalid ideal");
  if (f.is_rational()) return AlgInt{A.a, 0};
  if (f.d < 0) return principal_imaginary(f, A);
  return principal_real(f, A);
}

}  // namespace cmk
