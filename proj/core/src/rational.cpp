#include "shadowlab/rational.hpp"

#include <cctype>

#include "shadowlab/errors.hpp"

namespace shadowlab {

namespace {

// ^-?(0|[1-9][0-9]*)$ — an optionally signed integer without leading zeros.
bool is_canonical_integer(const std::string& s, bool allow_sign) {
  std::size_t i = 0;
  if (allow_sign && i < s.size() && s[i] == '-') ++i;
  if (i >= s.size()) return false;
  if (s[i] == '0') return i + 1 == s.size();
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_canonical_integer(text, true)) {
      throw ParseError("bad rational literal: \"" + text + "\"");
    }
    return Rational(mpz_class(text, 10), 1);
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_canonical_integer(num, true) || !is_canonical_integer(den, false) || den == "0") {
    throw ParseError("bad rational literal: \"" + text + "\"");
  }
  Rational value(mpz_class(num, 10), mpz_class(den, 10));
  Rational canon = value;
  canon.canonicalize();
  if (cmp(canon.get_num(), value.get_num()) != 0 || cmp(canon.get_den(), value.get_den()) != 0) {
    throw ParseError("non-canonical rational literal: \"" + text + "\"");
  }
  return canon;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (sgn(value) < 0) return std::nullopt;
  const mpz_class num = value.get_num();
  const mpz_class den = value.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rnum, rden;
  mpz_sqrt(rnum.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rden.get_mpz_t(), den.get_mpz_t());
  return Rational(rnum, rden);  // gcd(p,q)=1 implies gcd(sqrt p, sqrt q)=1
}

}  // namespace shadowlab
