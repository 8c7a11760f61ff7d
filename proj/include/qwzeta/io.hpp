#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qwzeta/linalg.hpp"
#include "qwzeta/zeta.hpp"

namespace qwz {

/// 17 significant digits, shortest round-trip form.
std::string format_double(double v);

/// RFC 4180 field: quoted when it contains a comma, quote or line break.
std::string csv_field(const std::string& text);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Parses `0.3`, `-0.5`, `0.3+0.2i`, `0.3-0.2i`, `2i`.
Complex parse_complex(const std::string& text);

inline const std::vector<std::string> kZetaCsvHeader = {"method", "d",     "L",           "marking",    "u_re",
                                                        "u_im",   "zeta_inv_re", "zeta_inv_im", "flags"};

/// `side` and `marking` are empty for evaluators that have no finite torus.
std::vector<std::string> zeta_csv_fields(const ZetaValue& z, int dim, std::optional<int> side,
                                         const std::string& marking);

}  // namespace qwz
