#include "flatpde/sym/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace flatpde::sym {

namespace {

bool term_desc(const Term& a, const Term& b) { return a.mono > b.mono; }

}  // namespace

Polynomial::Polynomial(long c) {
  if (c != 0) terms_.push_back({Monomial{}, Integer(c)});
}

Polynomial::Polynomial(Integer c) {
  if (c != 0) terms_.push_back({Monomial{}, std::move(c)});
}

Polynomial Polynomial::variable(Var v) { return term(Monomial::of(v), 1); }

Polynomial Polynomial::term(Monomial m, Integer c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({m, std::move(c)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_desc);
  Polynomial p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

unsigned Polynomial::degree_in(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[v.index]);
  return d;
}

VarSet Polynomial::support() const {
  VarSet s;
  for (const auto& t : terms_) s |= t.mono.support();
  return s;
}

Integer Polynomial::max_norm() const {
  Integer m = 0;
  for (const auto& t : terms_)
    if (mpz_cmpabs(t.coeff.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(t.coeff);
  return m;
}

Integer Polynomial::content() const {
  Integer g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial m = terms_.front().mono;
  for (const auto& t : terms_) {
    if (m.is_one()) break;
    m = Monomial::gcd(m, t.mono);
  }
  return m;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = a[i].mono <=> b[j].mono;
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Integer s = subtract ? Integer(a[i].coeff - b[j].coeff) : Integer(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge_add(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = -o;
  terms_ = merge_add(terms_, o.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Polynomial& s = a.size() <= b.size() ? a : b;
  const Polynomial& l = a.size() <= b.size() ? b : a;
  if (s.size() == 1) return l.times_monomial(s.terms_[0].mono).scaled(s.terms_[0].coeff);

  // k-way merge of the rows s[i] * l, each already sorted.
  struct Node {
    Monomial mono;
    std::uint32_t i, j;
  };
  auto less = [](const Node& x, const Node& y) { return x.mono < y.mono; };
  std::vector<Node> heap;
  heap.reserve(s.size());
  for (std::uint32_t i = 0; i < s.size(); ++i)
    heap.push_back({s.terms_[i].mono * l.terms_[0].mono, i, 0});
  std::make_heap(heap.begin(), heap.end(), less);

  Polynomial out;
  out.terms_.reserve(s.size() + l.size());
  Integer acc;
  while (!heap.empty()) {
    Monomial current = heap.front().mono;
    acc = 0;
    while (!heap.empty() && heap.front().mono == current) {
      std::pop_heap(heap.begin(), heap.end(), less);
      Node& n = heap.back();
      mpz_addmul(acc.get_mpz_t(), s.terms_[n.i].coeff.get_mpz_t(), l.terms_[n.j].coeff.get_mpz_t());
      if (n.j + 1 < l.size()) {
        ++n.j;
        n.mono = s.terms_[n.i].mono * l.terms_[n.j].mono;
        std::push_heap(heap.begin(), heap.end(), less);
      } else {
        heap.pop_back();
      }
    }
    if (acc != 0) out.terms_.push_back({current, acc});
  }
  return out;
}

Polynomial Polynomial::scaled(const Integer& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  if (c != 1)
    for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
  Polynomial r = *this;
  if (!m.is_one())
    for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

Polynomial Polynomial::divided_by(const Integer& c) const {
  Polynomial r = *this;
  if (c != 1)
    for (auto& t : r.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  return r;
}

Polynomial Polynomial::divided_by(const Monomial& m) const {
  Polynomial r = *this;
  if (!m.is_one())
    for (auto& t : r.terms_) t.mono = t.mono / m;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (is_zero()) return Polynomial{};
  if (d.is_monomial()) {
    const auto& dt = d.terms_[0];
    Polynomial q;
    q.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!dt.mono.divides(t.mono) || !mpz_divisible_p(t.coeff.get_mpz_t(), dt.coeff.get_mpz_t()))
        return std::nullopt;
      Integer c;
      mpz_divexact(c.get_mpz_t(), t.coeff.get_mpz_t(), dt.coeff.get_mpz_t());
      q.terms_.push_back({t.mono / dt.mono, std::move(c)});
    }
    return q;
  }
  if (d.degree() > degree()) return std::nullopt;
  // The leading and trailing terms of a product are products of the
  // leading and trailing terms of the factors.
  const auto& dl = d.terms_.front();
  const auto& dlast = d.terms_.back();
  if (!dl.mono.divides(terms_.front().mono) || !dlast.mono.divides(terms_.back().mono))
    return std::nullopt;
  if (!mpz_divisible_p(terms_.back().coeff.get_mpz_t(), dlast.coeff.get_mpz_t()))
    return std::nullopt;
  VarSet ds = d.support();
  for (std::size_t v = 0; v < kMaxVars; ++v)
    if (ds.test(v) && d.degree_in(Var{static_cast<std::uint16_t>(v)}) >
                          degree_in(Var{static_cast<std::uint16_t>(v)}))
      return std::nullopt;

  std::map<Monomial, Integer, std::greater<>> rem;
  for (const auto& t : terms_) rem.emplace_hint(rem.end(), t.mono, t.coeff);
  Polynomial q;
  Integer qc, prod;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!dl.mono.divides(it->first) || !mpz_divisible_p(it->second.get_mpz_t(), dl.coeff.get_mpz_t()))
      return std::nullopt;
    Monomial qm = it->first / dl.mono;
    mpz_divexact(qc.get_mpz_t(), it->second.get_mpz_t(), dl.coeff.get_mpz_t());
    rem.erase(it);
    for (std::size_t k = 1; k < d.terms_.size(); ++k) {
      Monomial m = qm * d.terms_[k].mono;
      prod = qc * d.terms_[k].coeff;
      auto [pos, inserted] = rem.try_emplace(m);
      pos->second -= prod;
      if (pos->second == 0) rem.erase(pos);
    }
    q.terms_.push_back({qm, qc});
  }
  return q;
}

Polynomial Polynomial::derivative(Var v) const {
  Polynomial r;
  for (const auto& t : terms_) {
    unsigned e = t.mono[v.index];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(v.index, e - 1);
    r.terms_.push_back({m, t.coeff * e});
  }
  return r;
}

Polynomial Polynomial::evaluate(Var v, const Integer& value) const {
  unsigned d = degree_in(v);
  if (d == 0) return *this;
  std::vector<Integer> powers(d + 1);
  powers[0] = 1;
  for (unsigned k = 1; k <= d; ++k) powers[k] = powers[k - 1] * value;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    unsigned e = t.mono[v.index];
    Monomial m = t.mono;
    m.set(v.index, 0);
    out.push_back({m, t.coeff * powers[e]});
  }
  return from_terms(std::move(out));
}

std::map<Monomial, Polynomial> Polynomial::coefficients_in(const VarSet& vars) const {
  std::map<Monomial, std::vector<Term>> buckets;
  VarSet rest = ~vars;
  for (const auto& t : terms_)
    buckets[t.mono.restrict_to(vars)].push_back({t.mono.restrict_to(rest), t.coeff});
  std::map<Monomial, Polynomial> out;
  for (auto& [m, ts] : buckets) out.emplace(m, from_terms(std::move(ts)));
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

}  // namespace flatpde::sym
