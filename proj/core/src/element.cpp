#include "qtorus/element.hpp"

#include <algorithm>
#include <cmath>

#include "qtorus/error.hpp"

namespace qtorus {
namespace {

// Sort by frequency, merge duplicates, drop coefficients with |c| <= tol.
std::vector<Term> normalize(std::vector<Term> terms, double tol) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m < b.m; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size();) {
    Complex s = terms[i].c;
    std::size_t j = i + 1;
    while (j < terms.size() && terms[j].m == terms[i].m) s += terms[j++].c;
    if (std::abs(s) > tol) out.push_back({terms[i].m, s});
    i = j;
  }
  return out;
}

}  // namespace

QElement::QElement(ThetaMatrix theta, double prune_tol)
    : QElement(std::make_shared<const ThetaMatrix>(std::move(theta)), prune_tol) {}

QElement::QElement(std::shared_ptr<const ThetaMatrix> theta, double prune_tol)
    : theta_(std::move(theta)), prune_tol_(prune_tol) {
  if (!theta_) throw DomainError("element requires a theta matrix");
  if (!(prune_tol_ >= 0.0)) throw DomainError("prune tolerance must be non-negative");
}

QElement::QElement(std::shared_ptr<const ThetaMatrix> theta, std::vector<Term> terms, double prune_tol)
    : QElement(std::move(theta), prune_tol) {
  for (const Term& t : terms) {
    if (static_cast<int>(t.m.size()) != dim())
      throw DimensionMismatch("frequency " + t.m.str() + " has wrong dimension");
    if (!std::isfinite(t.c.real()) || !std::isfinite(t.c.imag()))
      throw DomainError("non-finite coefficient at " + t.m.str());
  }
  terms_ = normalize(std::move(terms), prune_tol_);
}

Complex QElement::coeff(const MultiIndex& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const MultiIndex& key) { return t.m < key; });
  return (it != terms_.end() && it->m == m) ? it->c : Complex{};
}

Complex QElement::mean() const { return coeff(MultiIndex(static_cast<std::size_t>(dim()))); }

int QElement::degree() const {
  int r = 0;
  for (const Term& t : terms_) r = std::max(r, t.m.max_abs());
  return r;
}

double QElement::max_frequency_norm() const {
  long long r = 0;
  for (const Term& t : terms_) r = std::max(r, t.m.norm_sq());
  return std::sqrt(static_cast<double>(r));
}

double QElement::l2_norm() const {
  double s = 0.0;
  for (const Term& t : terms_) s += std::norm(t.c);
  return std::sqrt(s);
}

QElement QElement::with_terms(std::vector<Term> terms) const {
  return QElement(theta_, std::move(terms), prune_tol_);
}

void QElement::check_compatible(const QElement& other) const {
  if (dim() != other.dim())
    throw DimensionMismatch("dimension " + std::to_string(dim()) + " vs " + std::to_string(other.dim()));
  if (theta_ != other.theta_ && !(*theta_ == *other.theta_))
    throw ThetaMismatch("operands belong to algebras with different theta");
}

QElement monomial(const ThetaMatrix& theta, const MultiIndex& m, Complex c, double prune_tol) {
  auto t = std::make_shared<const ThetaMatrix>(theta);
  return QElement(t, std::vector<Term>{{m, c}}, prune_tol);
}

QElement unit(const ThetaMatrix& theta) {
  return monomial(theta, MultiIndex(static_cast<std::size_t>(theta.dim())));
}

QElement operator+(const QElement& a, const QElement& b) {
  a.check_compatible(b);
  std::vector<Term> t(a.terms().begin(), a.terms().end());
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return a.with_terms(std::move(t));
}

QElement operator-(const QElement& a) { return Complex(-1.0) * a; }

QElement operator-(const QElement& a, const QElement& b) { return a + (-b); }

QElement operator*(Complex s, const QElement& a) {
  std::vector<Term> t;
  t.reserve(a.support_size());
  for (const Term& x : a.terms()) t.push_back({x.m, s * x.c});
  return a.with_terms(std::move(t));
}

QElement multiply(const QElement& a, const QElement& b) {
  a.check_compatible(b);
  const ThetaMatrix& th = a.theta();
  bool commutative = th.is_commutative();
  std::vector<Term> t;
  t.reserve(a.support_size() * b.support_size());
  for (const Term& x : a.terms()) {
    for (const Term& y : b.terms()) {
      Complex c = x.c * y.c;
      if (!commutative) c *= std::polar(1.0, th.product_phase(x.m, y.m));
      t.push_back({x.m + y.m, c});
    }
  }
  return a.with_terms(std::move(t));
}

QElement operator*(const QElement& a, const QElement& b) { return multiply(a, b); }

QElement adjoint(const QElement& a) {
  const ThetaMatrix& th = a.theta();
  std::vector<Term> t;
  t.reserve(a.support_size());
  for (const Term& x : a.terms())
    t.push_back({-x.m, std::conj(x.c) * std::polar(1.0, th.adjoint_phase(x.m))});
  return a.with_terms(std::move(t));
}

QElement linear_combine(std::span<const std::pair<Complex, QElement>> items) {
  if (items.empty()) throw DomainError("linear_combine needs at least one operand");
  const QElement& first = items.front().second;
  std::vector<Term> t;
  for (const auto& [s, x] : items) {
    first.check_compatible(x);
    for (const Term& y : x.terms()) t.push_back({y.m, s * y.c});
  }
  return first.with_terms(std::move(t));
}

Complex trace(const QElement& a) { return a.mean(); }

Complex inner_product(const QElement& a, const QElement& b) {
  a.check_compatible(b);
  Complex s{};
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->m < ib->m) {
      ++ia;
    } else if (ib->m < ia->m) {
      ++ib;
    } else {
      s += ia->c * std::conj(ib->c);
      ++ia;
      ++ib;
    }
  }
  return s;
}

QElement map_coefficients(const QElement& a,
                          const std::function<Complex(const MultiIndex&, Complex)>& f) {
  std::vector<Term> t;
  t.reserve(a.support_size());
  for (const Term& x : a.terms()) t.push_back({x.m, f(x.m, x.c)});
  return a.with_terms(std::move(t));
}

}  // namespace qtorus
