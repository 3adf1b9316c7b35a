#include "deltak/ratfunc.hpp"

#include "deltak/errors.hpp"

namespace deltak {

namespace {

bool is_one(const MultiPoly& p) { return p.is_constant() && !p.is_zero() && p.constant_value() == 1; }

}  // namespace

RatFunc::RatFunc(MultiPoly num)
    : num_(std::move(num)), den_(MultiPoly::constant(num_.signature(), 1, num_.order())) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) {
  *this = make_canonical(std::move(num), std::move(den));
}

RatFunc RatFunc::make_canonical(MultiPoly num, MultiPoly den) {
  if (!(num.signature() == den.signature()) || !(num.order() == den.order())) {
    throw SignatureMismatch("RatFunc: numerator and denominator signatures differ");
  }
  if (den.is_zero()) throw PreconditionError("RatFunc: zero denominator");
  RatFunc r;
  if (num.is_zero()) {
    r.num_ = std::move(num);
    r.den_ = MultiPoly::constant(r.num_.signature(), 1, r.num_.order());
    return r;
  }
  if (!den.is_constant()) {
    MultiPoly g = gcd(num, den);
    if (!g.is_constant()) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  const Rational lc = den.leading_coefficient();
  if (lc != 1) {
    const Rational inv = 1 / lc;
    num *= inv;
    den *= inv;
  }
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RatFunc RatFunc::zero(Signature sig, TermOrder order) { return RatFunc(MultiPoly(std::move(sig), order)); }

RatFunc RatFunc::constant(Signature sig, const Rational& c, TermOrder order) {
  return RatFunc(MultiPoly::constant(std::move(sig), c, order));
}

RatFunc RatFunc::variable(Signature sig, std::size_t index, TermOrder order) {
  return RatFunc(MultiPoly::variable(std::move(sig), index, order));
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw PreconditionError("constant_value of a non-constant rational function");
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (is_one(den_) && is_one(o.den_)) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    *this = make_canonical(num_ + o.num_, den_);
    return *this;
  }
  *this = make_canonical(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_one(den_) && is_one(o.den_)) {
    num_ *= o.num_;
    return *this;
  }
  *this = make_canonical(num_ * o.num_, den_ * o.den_);
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw PreconditionError("RatFunc: division by zero");
  *this = make_canonical(num_ * o.den_, den_ * o.num_);
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw PreconditionError("RatFunc: inverse of zero");
  return make_canonical(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  return r;  // coprimality and monic denominators survive powers
}

RatFunc RatFunc::derivative(std::size_t var) const {
  if (is_one(den_)) return RatFunc(num_.derivative(var));
  return make_canonical(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RatFunc RatFunc::substitute(std::size_t var, const Rational& value) const {
  MultiPoly d = den_.substitute(var, value);
  if (d.is_zero()) throw PreconditionError("RatFunc: substitution hits a pole");
  return make_canonical(num_.substitute(var, value), std::move(d));
}

std::string RatFunc::to_string() const {
  if (is_one(den_)) return num_.to_string();
  if (den_.is_constant()) {
    // numerator over a rational constant: fold it into the coefficients
    return (num_ * (1 / den_.constant_value())).to_string();
  }
  const bool bare_num = num_.size() == 1;
  std::size_t vars = 0;
  for (auto e : den_.terms().front().exponents) vars += e != 0;
  const bool bare_den = den_.size() == 1 && vars == 1 && den_.terms().front().coeff == 1;
  const std::string n = bare_num ? num_.to_string() : "(" + num_.to_string() + ")";
  const std::string d = bare_den ? den_.to_string() : "(" + den_.to_string() + ")";
  return n + "/" + d;
}

}  // namespace deltak
