#include "fuzzy/document.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "fuzzy/errors.hpp"

namespace fuzzy {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, static_cast<int>(pos) + 1, msg); }
    void skip() {
        while (pos < s.size() && is_space(s[pos])) ++pos;
    }
    bool eof() {
        skip();
        return pos >= s.size();
    }
    std::string_view word() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && !is_space(s[pos]) && s[pos] != '[' && s[pos] != '(') ++pos;
        return s.substr(start, pos - start);
    }
    char expect_one_of(std::string_view chars) {
        skip();
        if (pos >= s.size() || chars.find(s[pos]) == std::string_view::npos)
            fail(std::string("expected one of '") + std::string(chars) + "'");
        return s[pos++];
    }
    double number() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && !is_space(s[pos]) && s[pos] != ',' && s[pos] != ']' && s[pos] != ')') ++pos;
        std::string_view tok = s.substr(start, pos - start);
        if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
        double v = 0;
        auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size()) {
            pos = start;
            fail("malformed number");
        }
        return v;
    }
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (is_space(s.front()) || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (is_space(s.back()) || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct Bounds {
    double lo, hi;
    bool lo_closed, hi_closed;
};

Bounds parse_interval(Cursor& c) {
    Bounds b{};
    b.lo_closed = c.expect_one_of("[(") == '[';
    b.lo = c.number();
    c.expect_one_of(",");
    b.hi = c.number();
    b.hi_closed = c.expect_one_of("])") == ']';
    return b;
}

Expr parse_rest(Cursor& c, char var) {
    c.skip();
    std::size_t start = c.pos;
    std::string_view text = c.s.substr(start);
    if (trim(text).empty()) c.fail("missing expression");
    try {
        return parse_expr(text, var);
    } catch (const ParseError& e) {
        throw ParseError(c.line, static_cast<int>(start) + e.column, e.what());
    }
}

void check_cut_coverage(const std::vector<CutLine>& lines, bool right) {
    const char* name = right ? "right" : "left";
    std::vector<const CutLine*> segs, points;
    for (const auto& l : lines) {
        if (l.right_curve != right) continue;
        (l.lo == l.hi ? points : segs).push_back(&l);
    }
    auto fail = [](const CutLine* l, const std::string& msg) { throw ParseError(l->line, 1, msg); };
    if (segs.empty()) {
        if (!points.empty()) fail(points.front(), std::string(name) + " curve has no segments");
        throw ParseError(0, 1, std::string(name) + " curve missing");
    }
    std::sort(segs.begin(), segs.end(), [](auto* a, auto* b) { return a->lo < b->lo; });
    if (segs.front()->lo != 0.0) fail(segs.front(), "level intervals must start at 0");
    if (segs.back()->hi != 1.0) fail(segs.back(), "level intervals must end at 1");
    std::map<double, int> closures;
    closures[0.0] += segs.front()->lo_closed;
    closures[1.0] += segs.back()->hi_closed;
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        const CutLine* a = segs[i];
        const CutLine* b = segs[i + 1];
        if (b->lo < a->hi) fail(b, "overlapping level intervals");
        if (b->lo > a->hi) fail(b, "gap between level intervals");
        closures[a->hi] += a->hi_closed + b->lo_closed;
    }
    for (const CutLine* p : points) {
        auto it = closures.find(p->lo);
        if (it == closures.end()) fail(p, "point line must sit on a breakpoint");
        it->second += 1;
    }
    for (const auto& [b, n] : closures) {
        if (n == 1) continue;
        const CutLine* at = segs.front();
        for (const CutLine* s : segs)
            if (s->lo == b || s->hi == b) at = s;
        fail(at, "level " + format_number(b) + (n == 0 ? " is not covered" : " is covered more than once"));
    }
}

void check_piece_coverage(const std::vector<MembershipPiece>& pieces, const std::vector<int>& line_of) {
    std::vector<std::size_t> idx(pieces.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
        return pieces[a].lo < pieces[b].lo || (pieces[a].lo == pieces[b].lo && pieces[a].hi < pieces[b].hi);
    });
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
        const auto& a = pieces[idx[k]];
        const auto& b = pieces[idx[k + 1]];
        if (b.lo < a.hi) throw ParseError(line_of[idx[k + 1]], 1, "overlapping pieces");
        // Touching pieces may both be closed; the values must then agree.
        if (b.lo == a.hi && a.lo == a.hi && b.lo == b.hi)
            throw ParseError(line_of[idx[k + 1]], 1, "repeated point piece");
    }
}

}  // namespace

Document parse_document(std::string_view text) {
    Document doc;
    bool have_rep = false;
    bool have_content = false;
    std::vector<int> piece_lines;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::string_view t = trim(raw);
        if (t.empty() || t.front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        Cursor c{raw, 0, line_no};
        std::string_view key = c.word();
        if (!key.empty() && key.back() == ':') {
            std::string value(trim(raw.substr(c.pos)));
            if (key == "name:") {
                doc.name = value;
            } else if (key == "source:") {
                doc.source = value;
            } else if (key == "representation:") {
                if (have_content) c.fail("representation must precede segment lines");
                if (value == "cuts")
                    doc.representation = Representation::cuts;
                else if (value == "membership")
                    doc.representation = Representation::membership;
                else
                    c.fail("representation must be 'cuts' or 'membership'");
                have_rep = true;
            } else {
                c.pos = 0;
                c.fail("unknown header '" + std::string(key) + "'");
            }
        } else if (key == "left" || key == "right" || key == "piece") {
            bool piece = key == "piece";
            if (!have_rep) {
                doc.representation = piece ? Representation::membership : Representation::cuts;
                have_rep = true;
            }
            if (piece != (doc.representation == Representation::membership)) {
                c.pos = 0;
                c.fail(piece ? "piece line in a cut document" : "cut line in a membership document");
            }
            have_content = true;
            std::size_t interval_pos = c.pos;
            Bounds b = parse_interval(c);
            if (b.hi < b.lo || (b.lo == b.hi && !(b.lo_closed && b.hi_closed))) {
                c.pos = interval_pos;
                c.fail("empty interval");
            }
            if (!piece && (b.lo < 0 || b.hi > 1)) {
                c.pos = interval_pos;
                c.fail("level interval outside [0, 1]");
            }
            std::string_view mono_word = c.word();
            auto mono = mono_from_string(std::string(mono_word));
            if (!mono) {
                c.pos -= mono_word.size();
                c.fail("expected increasing, decreasing or constant");
            }
            Expr e = parse_rest(c, piece ? 'x' : 'a');
            if (piece) {
                doc.pieces.push_back(MembershipPiece{b.lo, b.hi, b.lo_closed, b.hi_closed, *mono, e});
                piece_lines.push_back(line_no);
            } else {
                doc.cuts.push_back(CutLine{key == "right", b.lo, b.hi, b.lo_closed, b.hi_closed, *mono, e, line_no});
            }
        } else {
            c.pos = 0;
            c.fail("unknown line kind '" + std::string(key) + "'");
        }
        if (end == text.size()) break;
    }
    if (doc.representation == Representation::cuts) {
        check_cut_coverage(doc.cuts, false);
        check_cut_coverage(doc.cuts, true);
    } else {
        if (doc.pieces.empty()) throw ParseError(0, 1, "no membership pieces");
        check_piece_coverage(doc.pieces, piece_lines);
    }
    return doc;
}

Document read_document(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

namespace {

CutCurve curve_from_lines(const std::vector<CutLine>& lines, bool right) {
    std::vector<const CutLine*> segs;
    std::map<double, const CutLine*> points;
    for (const auto& l : lines) {
        if (l.right_curve != right) continue;
        if (l.lo == l.hi)
            points[l.lo] = &l;
        else
            segs.push_back(&l);
    }
    std::sort(segs.begin(), segs.end(), [](auto* a, auto* b) { return a->lo < b->lo; });
    std::vector<Segment> out;
    std::vector<double> pv;
    auto point_or = [&](double b, double fallback) {
        auto it = points.find(b);
        return it != points.end() ? it->second->expr(b) : fallback;
    };
    pv.push_back(point_or(0.0, segs.front()->expr(0.0)));
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const CutLine* s = segs[i];
        out.push_back(Segment{s->lo, s->hi, s->expr, s->mono, std::nullopt});
        double b = s->hi;
        double v = s->hi_closed || i + 1 == segs.size() ? s->expr(b) : segs[i + 1]->expr(b);
        pv.push_back(point_or(b, v));
    }
    return CutCurve(std::move(out), std::move(pv));
}

}  // namespace

FuzzyNum to_fuzzy(const Document& doc) {
    if (doc.representation == Representation::membership) return from_membership_pieces(doc.pieces);
    FuzzyNum fz(curve_from_lines(doc.cuts, false), curve_from_lines(doc.cuts, true));
    require_valid(fz);
    return fz;
}

FuzzyNum load_document(const std::filesystem::path& path) { return to_fuzzy(read_document(path)); }

std::string format_document(const Document& doc) {
    std::string out;
    if (!doc.name.empty()) out += "name: " + doc.name + "\n";
    if (!doc.source.empty()) out += "source: " + doc.source + "\n";
    out += doc.representation == Representation::cuts ? "representation: cuts\n" : "representation: membership\n";
    auto interval = [](double lo, double hi, bool lc, bool hc) {
        return std::string(lc ? "[" : "(") + format_number(lo) + ", " + format_number(hi) + (hc ? "]" : ")");
    };
    if (doc.representation == Representation::cuts) {
        for (const auto& l : doc.cuts) {
            out += l.right_curve ? "right " : "left ";
            out += interval(l.lo, l.hi, l.lo_closed, l.hi_closed) + " " + to_string(l.mono) + " " +
                   l.expr.to_string('a') + "\n";
        }
    } else {
        for (const auto& p : doc.pieces) {
            out += "piece " + interval(p.lo, p.hi, p.lo_closed, p.hi_closed) + " " + to_string(p.mono) + " " +
                   p.expr.to_string('x') + "\n";
        }
    }
    return out;
}

Document to_document(const FuzzyNum& fz, std::string name, std::string source) {
    Document doc;
    doc.name = std::move(name);
    doc.source = std::move(source);
    doc.representation = Representation::cuts;
    for (int side = 0; side < 2; ++side) {
        const CutCurve& c = side == 0 ? fz.left() : fz.right();
        const auto& segs = c.segments();
        const auto& pv = c.point_values();
        std::vector<CutLine> lines;
        for (const auto& s : segs) {
            if (!s.expr.printable()) throw DomainError("cut expression has no closed form to print");
            lines.push_back(CutLine{side == 1, s.lo, s.hi, false, false, s.mono, s.expr, 0});
        }
        std::vector<CutLine> extra;
        for (std::size_t i = 0; i <= segs.size(); ++i) {
            double b = i == 0 ? 0.0 : segs[i - 1].hi;
            double v = pv[i];
            if (i > 0 && segs[i - 1].expr(b) == v) {
                lines[i - 1].hi_closed = true;
            } else if (i < segs.size() && segs[i].expr(b) == v) {
                lines[i].lo_closed = true;
            } else {
                extra.push_back(CutLine{side == 1, b, b, true, true, Mono::constant, Expr::constant(v), 0});
            }
        }
        for (auto& l : lines) doc.cuts.push_back(std::move(l));
        for (auto& l : extra) doc.cuts.push_back(std::move(l));
    }
    return doc;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + path.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("cannot write " + path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot write " + path.string());
    }
}

}  // namespace fuzzy
