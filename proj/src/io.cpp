#include "qwzeta/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qwz {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << "\r\n";
}

namespace {

double parse_real(const std::string& text, const std::string& whole) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument("bad complex number '" + whole + "'");
  return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty complex number");
  if (text.back() != 'i' && text.back() != 'j') return {parse_real(text, text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not the leading one and not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(body, text)};
  return {parse_real(body.substr(0, split), text), parse_real(body.substr(split), text)};
}

std::vector<std::string> zeta_csv_fields(const ZetaValue& z, int dim, std::optional<int> side,
                                         const std::string& marking) {
  return {to_string(z.method),
          std::to_string(dim),
          side ? std::to_string(*side) : std::string(),
          marking,
          format_double(z.u.real()),
          format_double(z.u.imag()),
          format_double(z.value.real()),
          format_double(z.value.imag()),
          z.flag_string()};
}

}  // namespace qwz
