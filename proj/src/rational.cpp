#include "relqc/rational.hpp"

#include "relqc/error.hpp"

namespace relqc {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::Parse, "empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad rational literal '" + text + "'");
  }
}

std::string format_rational(const Rational& value) {
  std::string num = numerator(value).str();
  if (denominator(value) == 1) return num;
  return num + "/" + denominator(value).str();
}

}  // namespace relqc
