#include "specinv/abgroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace specinv {

namespace {

bool is_power_of(Int d, long p) {
  if (d < 1) return false;
  while (d % p == 0) d /= p;
  return d == 1;
}

bool lattice_less(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
  return false;
}

}  // namespace

FgAbGroup::FgAbGroup(int r, std::vector<Int> t) : rank(r), torsion(std::move(t)) {
  if (rank < 0) throw DomainError("group rank must be nonnegative");
  for (size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw DomainError("invariant factors must be >= 2");
    if (i > 0 && torsion[i] % torsion[i - 1] != 0)
      throw DomainError("invariant factors must form a divisibility chain");
  }
}

Int FgAbGroup::order() const {
  if (rank > 0) throw DomainError("order of an infinite group");
  Int o = 1;
  for (const Int& d : torsion) o *= d;
  return o;
}

IntMatrix FgAbGroup::relation_lattice() const {
  const int m = ambient_dim();
  const int k = static_cast<int>(torsion.size());
  IntMatrix R = IntMatrix::Zero(m, k);
  for (int i = 0; i < k; ++i) R(rank + i, i) = torsion[static_cast<size_t>(i)];
  return R;
}

std::string FgAbGroup::to_string() const {
  std::string s;
  for (int i = 0; i < rank; ++i) s += s.empty() ? "T" : "xT";
  for (const Int& d : torsion) {
    if (!s.empty()) s += "x";
    s += "C" + d.get_str();
  }
  return s.empty() ? "1" : s;
}

FgAbGroup cyclic_group(const Int& n) {
  if (n == 1) return FgAbGroup(0, {});
  return FgAbGroup(0, {n});
}

FgAbGroup elementary_abelian(long p, int r) {
  return FgAbGroup(0, std::vector<Int>(static_cast<size_t>(r), Int(p)));
}

Subgroup subgroup_from_generators(const FgAbGroup& A, const IntMatrix& gens) {
  const int m = A.ambient_dim();
  if (gens.size() > 0 && gens.rows() != m)
    throw DomainError("subgroup generators have wrong ambient dimension");
  IntMatrix R = A.relation_lattice();
  const Eigen::Index gc = gens.size() > 0 ? gens.cols() : 0;
  IntMatrix all(m, gc + R.cols());
  if (gc > 0) all.leftCols(gc) = gens;
  all.rightCols(R.cols()) = R;
  return Subgroup{A, hermite_normal_form(all)};
}

Subgroup full_subgroup(const FgAbGroup& A) {
  return subgroup_from_generators(A, IntMatrix(A.ambient_dim(), 0));
}

Subgroup trivial_subgroup(const FgAbGroup& A) {
  return subgroup_from_generators(A, IntMatrix::Identity(A.ambient_dim(), A.ambient_dim()));
}

bool is_subgroup(const Subgroup& b1, const Subgroup& b2) {
  if (!(b1.ambient == b2.ambient)) throw DomainError("ambient group mismatch");
  // B1 <= B2 iff K_{B2} <= K_{B1}.
  return lattice_subset(b2.lattice, b1.lattice);
}

LatticeQuotient present_lattice_quotient(const IntMatrix& G, const IntMatrix& S) {
  const Eigen::Index c = G.cols(), c2 = S.cols();
  IntMatrix X(c, c2);
  for (Eigen::Index j = 0; j < c2; ++j) {
    auto coeffs = solve_in_lattice(G, S.col(j));
    if (!coeffs) throw DomainError("present_lattice_quotient: not a sublattice");
    for (Eigen::Index i = 0; i < c; ++i) X(i, j) = (*coeffs)[static_cast<size_t>(i)];
  }
  SnfTriple snf;
  {
    SnfResult s = smith_normal_form(X);
    snf = {s.U, s.D, s.V};
  }
  IntMatrix basis = G * unimodular_inverse(snf.U);
  std::vector<Int> factors(static_cast<size_t>(c), Int(0));
  const Eigen::Index d = std::min<Eigen::Index>(c, c2);
  for (Eigen::Index i = 0; i < d; ++i) factors[static_cast<size_t>(i)] = snf.D(i, i);
  return {factors, basis};
}

FgAbGroup quotient_group(const Subgroup& b1, const Subgroup& b2) {
  if (!is_subgroup(b1, b2)) throw DomainError("quotient_group: not a subgroup");
  LatticeQuotient q = present_lattice_quotient(b1.lattice, b2.lattice);
  int rank = 0;
  std::vector<Int> torsion;
  for (const Int& d : q.factors) {
    if (d == 0)
      ++rank;
    else if (d >= 2)
      torsion.push_back(d);
  }
  std::sort(torsion.begin(), torsion.end());
  return FgAbGroup(rank, torsion);
}

int rank_p_pi0(const FgAbGroup& G, long p) {
  int r = 0;
  for (const Int& d : G.torsion)
    if (d % p == 0) ++r;
  return r;
}

bool is_pi0_p_group(const FgAbGroup& G, long p) {
  for (const Int& d : G.torsion)
    if (!is_power_of(d, p)) return false;
  return true;
}

int p_rank(const FgAbGroup& G, long p) { return rank_p_pi0(G, p); }

std::vector<Subgroup> enumerate_subgroups(const FgAbGroup& A) {
  if (!A.is_finite()) throw DomainError("enumerate_subgroups: infinite group");
  const int k = static_cast<int>(A.torsion.size());
  std::vector<long> dims;
  for (const Int& d : A.torsion) {
    if (d > 1000000) throw DomainError("enumerate_subgroups: group too large");
    dims.push_back(d.get_si());
  }
  using Elem = std::vector<long>;
  std::vector<Elem> all_elems;
  Elem cur(static_cast<size_t>(k), 0);
  while (true) {
    all_elems.push_back(cur);
    int i = 0;
    for (; i < k; ++i) {
      if (++cur[static_cast<size_t>(i)] < dims[static_cast<size_t>(i)]) break;
      cur[static_cast<size_t>(i)] = 0;
    }
    if (i == k) break;
  }

  auto close_under_addition = [&](std::set<Elem> s) {
    std::vector<Elem> work(s.begin(), s.end());
    while (!work.empty()) {
      Elem g = work.back();
      work.pop_back();
      for (const Elem& h : std::vector<Elem>(s.begin(), s.end())) {
        Elem sum(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i)
          sum[static_cast<size_t>(i)] =
              (g[static_cast<size_t>(i)] + h[static_cast<size_t>(i)]) %
              dims[static_cast<size_t>(i)];
        if (s.insert(sum).second) work.push_back(sum);
      }
    }
    return s;
  };

  std::set<std::set<Elem>> found;
  std::vector<std::set<Elem>> work;
  std::set<Elem> triv{Elem(static_cast<size_t>(k), 0)};
  found.insert(triv);
  work.push_back(triv);
  while (!work.empty()) {
    std::set<Elem> s = work.back();
    work.pop_back();
    for (const Elem& g : all_elems) {
      if (s.count(g)) continue;
      std::set<Elem> t = s;
      t.insert(g);
      t = close_under_addition(std::move(t));
      if (found.insert(t).second) work.push_back(t);
    }
  }

  std::vector<Subgroup> result;
  for (const auto& s : found) {
    IntMatrix gens(k, static_cast<Eigen::Index>(s.size()));
    Eigen::Index j = 0;
    for (const Elem& e : s) {
      for (int i = 0; i < k; ++i) gens(i, j) = e[static_cast<size_t>(i)];
      ++j;
    }
    result.push_back(subgroup_from_generators(A, gens));
  }
  // Sort by the order of the compact-side subgroup B (= |A*| / |K|), then by
  // the canonical lattice, for stable ids.
  Int total = A.order();
  auto b_order = [&](const Subgroup& s) {
    Int kdet = determinant(s.lattice);
    return total / (kdet < 0 ? Int(-kdet) : kdet);
  };
  std::sort(result.begin(), result.end(), [&](const Subgroup& a, const Subgroup& b) {
    Int oa = b_order(a), ob = b_order(b);
    if (oa != ob) return oa < ob;
    return lattice_less(a.lattice, b.lattice);
  });
  return result;
}

bool hom_is_well_defined(const Homomorphism& g) {
  IntMatrix Rs = hermite_normal_form(g.source.relation_lattice());
  IntMatrix Rt = g.target.relation_lattice();
  IntMatrix mapped = g.dual_matrix * Rt;
  for (Eigen::Index j = 0; j < mapped.cols(); ++j)
    if (!lattice_contains(Rs, mapped.col(j))) return false;
  return true;
}

bool hom_is_surjective(const Homomorphism& g) {
  if (!hom_is_well_defined(g)) return false;
  IntMatrix Rs = hermite_normal_form(g.source.relation_lattice());
  IntMatrix pre = lattice_preimage(g.dual_matrix, Rs);
  IntMatrix Rt = hermite_normal_form(g.target.relation_lattice());
  // g surjective iff g* injective iff the kernel of g* is exactly R_target.
  return lattice_subset(pre, Rt);
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& h) {
  if (!(g.target == h.source)) throw DomainError("compose: type mismatch");
  return Homomorphism{g.source, h.target, g.dual_matrix * h.dual_matrix};
}

Homomorphism identity_hom(const FgAbGroup& A) {
  return Homomorphism{A, A, IntMatrix::Identity(A.ambient_dim(), A.ambient_dim())};
}

Subgroup image_subgroup(const Homomorphism& g, const Subgroup& B) {
  if (!(B.ambient == g.source)) throw DomainError("image_subgroup: ambient mismatch");
  IntMatrix pre = lattice_preimage(g.dual_matrix, B.lattice);
  return subgroup_from_generators(g.target, pre);
}

Subgroup pushforward_subgroup(const Homomorphism& g, const Subgroup& B) {
  if (!hom_is_surjective(g))
    throw DomainError("pushforward_subgroup: homomorphism not surjective");
  return image_subgroup(g, B);
}

SubgroupStructure abstract_subgroup(const Subgroup& B) {
  const IntMatrix& K = B.lattice;
  const Eigen::Index m = B.ambient.ambient_dim();
  SnfResult s = smith_normal_form(K);
  Eigen::Index rank = 0;
  const Eigen::Index d = std::min(s.D.rows(), s.D.cols());
  for (Eigen::Index i = 0; i < d; ++i)
    if (s.D(i, i) != 0) ++rank;

  std::vector<Eigen::Index> free_rows, torsion_rows;
  std::vector<Int> torsion;
  for (Eigen::Index i = rank; i < m; ++i) free_rows.push_back(i);
  for (Eigen::Index i = 0; i < rank; ++i)
    if (s.D(i, i) >= 2) {
      torsion_rows.push_back(i);
      torsion.push_back(s.D(i, i));
    }
  FgAbGroup grp(static_cast<int>(free_rows.size()), torsion);
  const Eigen::Index mb = grp.ambient_dim();
  IntMatrix proj(mb, m);
  Eigen::Index r = 0;
  for (Eigen::Index i : free_rows) proj.row(r++) = s.U.row(i);
  for (Eigen::Index i : torsion_rows) proj.row(r++) = s.U.row(i);
  return SubgroupStructure{grp, Homomorphism{grp, B.ambient, proj}};
}

Subgroup restrict_subgroup(const SubgroupStructure& b, const Subgroup& C) {
  if (!(C.ambient == b.inclusion.target))
    throw DomainError("restrict_subgroup: ambient mismatch");
  IntMatrix mapped = b.inclusion.dual_matrix * C.lattice;
  return subgroup_from_generators(b.group, mapped);
}

}  // namespace specinv
