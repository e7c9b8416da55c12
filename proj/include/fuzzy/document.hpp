#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzy/cutcore.hpp"

namespace fuzzy {

enum class Representation { cuts, membership };

// One line of a cut document: `left [0, 0.5] increasing a - 0.5`.
struct CutLine {
    bool right_curve = false;
    double lo = 0, hi = 0;
    bool lo_closed = true, hi_closed = true;
    Mono mono = Mono::constant;
    Expr expr;
    int line = 0;
};

// Text form of a fuzzy number. Cut documents describe u⁻ and u⁺ by segment
// lines in the level variable `a`; membership documents list pieces in `x`.
struct Document {
    std::string name;
    std::string source;
    Representation representation = Representation::cuts;
    std::vector<CutLine> cuts;
    std::vector<MembershipPiece> pieces;
};

// Grammar and coverage checks; throws ParseError with line and column.
Document parse_document(std::string_view text);
Document read_document(const std::filesystem::path& path);

// Validated fuzzy number; throws ValidationError naming the failing clause.
FuzzyNum to_fuzzy(const Document& doc);
FuzzyNum load_document(const std::filesystem::path& path);

// Canonical text; parse_document(format_document(d)) round-trips byte for byte.
std::string format_document(const Document& doc);

// Cut document for fz (point values that differ from the adjacent segment
// get their own `[b, b]` lines). Throws DomainError for unprintable cuts.
Document to_document(const FuzzyNum& fz, std::string name, std::string source = "");

// Writes through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace fuzzy
