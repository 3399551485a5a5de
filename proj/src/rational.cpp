#include "unilrc/rational.h"

#include <cctype>
#include <charconv>

namespace unilrc {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return {parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text)};
  const bool negative = !text.empty() && text.front() == '-';
  std::string_view body = negative ? text.substr(1) : text;
  const auto dot = body.find('.');
  std::string digits(body.substr(0, dot));
  std::int64_t den = 1;
  if (dot != std::string_view::npos) {
    std::string_view frac = body.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("too many decimals: '" + std::string(text) + "'");
    digits += frac;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  }
  if (digits.empty() || digits.front() == '-' || digits.front() == '+')
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  const std::int64_t num = parse_int(digits, text);
  return {negative ? -num : num, den};
}

}  // namespace unilrc
