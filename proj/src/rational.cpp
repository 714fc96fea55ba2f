#include "cyclolab/rational.hpp"

#include <cctype>

#include "cyclolab/numtheory.hpp"

namespace cyclolab {

namespace {

bool valid_integer(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string strip(std::string s) {
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  return s;
}

BigInt to_bigint(std::string s) {
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text = strip(raw);
  if (auto slash = text.find('/'); slash != std::string::npos) {
    std::string num = strip(text.substr(0, slash));
    std::string den = strip(text.substr(slash + 1));
    if (!valid_integer(num) || !valid_integer(den)) throw Error("malformed rational: '" + raw + "'");
    BigInt d = to_bigint(den);
    if (d == 0) throw Error("division by zero");
    Rational q(to_bigint(num), d);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!valid_integer(whole) || (!frac.empty() && !valid_integer(frac)) ||
        (!frac.empty() && (frac[0] == '-' || frac[0] == '+')))
      throw Error("malformed rational: '" + raw + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt f = frac.empty() ? BigInt(0) : BigInt(frac, 10);
    BigInt w = to_bigint(whole);
    if (negative) w = -w;
    Rational q(w * scale + f, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  if (!valid_integer(text)) throw Error("malformed rational: '" + raw + "'");
  return Rational(to_bigint(text));
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace cyclolab
