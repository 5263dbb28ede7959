#include "specinv/vpoly.hpp"

#include <sstream>

namespace specinv {

namespace {

mpq_class reduce_mod(const mpq_class& q, long m) {
  mpz_class mm(m);
  mpz_class num = q.get_num() % mm;
  if (q.get_den() != 1) {
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), mm.get_mpz_t()))
      throw DomainError("coefficient denominator not invertible mod " +
                        std::to_string(m));
    num = (num * inv) % mm;
  }
  num %= mm;
  if (num < 0) num += mm;
  return mpq_class(num);
}

}  // namespace

std::string VRing::to_string() const {
  std::ostringstream os;
  os << (char_mod ? "Z/" + std::to_string(char_mod)
                  : (p ? "Z_(" + std::to_string(p) + ")" : "Q"));
  for (int i = 1; i <= nvars; ++i) {
    if (var_killed(i)) continue;
    os << "[v" << i << (var_inverted(i) ? "^+-" : "") << "]";
  }
  return os.str();
}

VPoly::VPoly(const VRing& r, const mpq_class& c) : r_(r) {
  if (c != 0) t_[Monomial(static_cast<size_t>(r.nvars), 0)] = c;
  normalize();
}

VPoly VPoly::var(const VRing& r, int i, long e) {
  Monomial m(static_cast<size_t>(r.nvars), 0);
  if (i < 1 || i > r.nvars) throw DomainError("variable index out of range");
  m[static_cast<size_t>(i - 1)] = static_cast<int>(e);
  return term(r, std::move(m), 1);
}

VPoly VPoly::term(const VRing& r, Monomial m, const mpq_class& c) {
  if (static_cast<int>(m.size()) != r.nvars)
    throw DomainError("monomial arity mismatch");
  VPoly out;
  out.r_ = r;
  if (c != 0) out.t_[std::move(m)] = c;
  out.normalize();
  return out;
}

void VPoly::normalize() {
  for (auto it = t_.begin(); it != t_.end();) {
    bool drop = false;
    for (int i = 1; i <= r_.nvars; ++i) {
      int e = it->first[static_cast<size_t>(i - 1)];
      if (e != 0 && r_.var_killed(i)) drop = true;
      if (e < 0 && !r_.var_inverted(i))
        throw DomainError("negative exponent on non-inverted variable");
    }
    if (!drop && r_.char_mod != 0) {
      it->second = reduce_mod(it->second, r_.char_mod);
      if (it->second == 0) drop = true;
    } else if (!drop) {
      it->second.canonicalize();
      if (it->second == 0) drop = true;
    }
    it = drop ? t_.erase(it) : std::next(it);
  }
}

bool VPoly::is_constant() const {
  if (t_.empty()) return true;
  if (t_.size() != 1) return false;
  for (int e : t_.begin()->first)
    if (e != 0) return false;
  return true;
}

mpq_class VPoly::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return t_.empty() ? mpq_class(0) : t_.begin()->second;
}

bool VPoly::is_unit() const {
  if (t_.size() != 1) return false;
  const auto& [m, c] = *t_.begin();
  for (int i = 1; i <= r_.nvars; ++i)
    if (m[static_cast<size_t>(i - 1)] != 0 && !r_.var_inverted(i)) return false;
  if (r_.char_mod != 0) return c != 0;  // prime characteristic in practice
  if (r_.p != 0)
    return c != 0 && c.get_num() % r_.p != 0 && c.get_den() % r_.p != 0;
  return c != 0;
}

std::optional<VPoly> VPoly::divided_by(const VPoly& b) const {
  if (!b.single_term()) throw DomainError("division requires single-term divisor");
  if (is_zero()) return *this;
  const VRing& r = common_ring(*this, b);
  const auto& [mb, cb] = *b.t_.begin();
  mpq_class cinv;
  if (r.char_mod != 0) {
    mpz_class inv, mm(r.char_mod);
    mpz_class cn = cb.get_num() % mm;
    if (cn < 0) cn += mm;
    if (!mpz_invert(inv.get_mpz_t(), cn.get_mpz_t(), mm.get_mpz_t()))
      return std::nullopt;
    cinv = mpq_class(inv);
  } else {
    cinv = 1 / cb;
  }
  VPoly out;
  out.r_ = r;
  for (const auto& [m, c] : t_) {
    Monomial q(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
      q[i] = m[i] - mb[i];
      if (q[i] < 0 && !r.var_inverted(static_cast<int>(i) + 1))
        return std::nullopt;
    }
    out.t_[std::move(q)] = c * cinv;
  }
  out.normalize();
  return out;
}

VPoly VPoly::reduced(const VRing& nr) const {
  if (nr.nvars != r_.nvars && !t_.empty())
    throw DomainError("ring change must preserve variable count");
  VPoly out;
  out.r_ = nr;
  for (const auto& [m, c] : t_)
    out.t_[m] = c;
  out.normalize();
  return out;
}

const VRing& VPoly::common_ring(const VPoly& a, const VPoly& b) {
  static const VRing kDefault{};
  bool atriv = a.t_.empty() && a.r_ == kDefault;
  bool btriv = b.t_.empty() && b.r_ == kDefault;
  if (atriv) return b.r_;
  if (btriv) return a.r_;
  if (!(a.r_ == b.r_)) throw DomainError("mixed coefficient rings");
  return a.r_;
}

VPoly operator+(const VPoly& a, const VPoly& b) {
  VPoly out;
  out.r_ = VPoly::common_ring(a, b);
  out.t_ = a.t_.empty() ? b.t_ : a.t_;
  const auto& other = a.t_.empty() ? a.t_ : b.t_;
  for (const auto& [m, c] : other) out.t_[m] += c;
  out.normalize();
  return out;
}

VPoly VPoly::operator-() const {
  VPoly out = *this;
  for (auto& [m, c] : out.t_) c = -c;
  out.normalize();
  return out;
}

VPoly operator-(const VPoly& a, const VPoly& b) { return a + (-b); }

VPoly operator*(const VPoly& a, const VPoly& b) {
  VPoly out;
  out.r_ = VPoly::common_ring(a, b);
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) {
      VPoly::Monomial m(ma.size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.t_[std::move(m)] += ca * cb;
    }
  out.normalize();
  return out;
}

bool VPoly::operator==(const VPoly& o) const {
  if (t_.empty() && o.t_.empty()) return true;
  common_ring(*this, o);  // enforce ring compatibility
  return t_ == o.t_;
}

std::string VPoly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    mpq_class cc = c;
    if (!first) {
      os << (cc < 0 ? " - " : " + ");
      if (cc < 0) cc = -cc;
    }
    first = false;
    bool hasvar = false;
    for (int e : m) hasvar |= e != 0;
    if (!hasvar || cc != 1) os << cc.get_str() << (hasvar ? "*" : "");
    bool firstv = true;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << "v" << (i + 1);
      if (m[i] != 1) os << "^" << m[i];
    }
  }
  return os.str();
}

}  // namespace specinv
