// LP-format emission. The exact grammar written here is the solver
// interchange contract documented in docs/model_reference.md.
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "sgc/model.hpp"

namespace sgc {

namespace {

constexpr std::size_t kMaxLine = 200;  // wrap well below the 255-char LP line cap

// Shortest round-trip decimal rendering; integers print without a point.
std::string num(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

class LineWriter {
public:
    explicit LineWriter(std::string& out) : out_(out) {}

    void begin(const std::string& head) {
        out_ += head;
        col_ = head.size();
    }

    void append(const std::string& piece) {
        if (col_ + piece.size() + 1 > kMaxLine) {
            out_ += "\n  ";
            col_ = 2;
        } else {
            out_ += ' ';
            ++col_;
        }
        out_ += piece;
        col_ += piece.size();
    }

    void end() { out_ += '\n'; }

private:
    std::string& out_;
    std::size_t col_ = 0;
};

void write_terms(LineWriter& lw, const ModelIR& m, const std::vector<LinTerm>& terms) {
    bool first = true;
    for (const auto& term : terms) {
        if (term.coef == 0.0) continue;
        const double mag = std::abs(term.coef);
        std::string piece;
        if (first) {
            piece = term.coef < 0 ? "- " : "";
        } else {
            piece = term.coef < 0 ? "- " : "+ ";
        }
        if (mag != 1.0) piece += num(mag) + " ";
        piece += m.variables[term.var].name;
        lw.append(piece);
        first = false;
    }
}

const char* sense_str(RowSense s) {
    switch (s) {
        case RowSense::LE: return "<=";
        case RowSense::EQ: return "=";
        case RowSense::GE: return ">=";
    }
    return "<=";
}

}  // namespace

std::string emit_lp(const ModelIR& m) {
    {
        std::unordered_set<std::string> names;
        for (const auto& v : m.variables)
            if (!names.insert(v.name).second)
                throw std::logic_error("emit_lp: variable name collision: " + v.name);
        names.clear();
        for (const auto& row : m.constraints)
            if (!names.insert(row.name).second)
                throw std::logic_error("emit_lp: row name collision: " + row.name);
    }

    std::string out;
    out.reserve(m.constraints.size() * 64 + m.variables.size() * 24);
    LineWriter lw(out);

    out += m.obj_sense == ObjSense::Minimize ? "Minimize\n" : "Maximize\n";
    lw.begin(" obj:");
    write_terms(lw, m, m.objective);
    lw.end();

    out += "Subject To\n";
    for (const auto& row : m.constraints) {
        lw.begin(" " + row.name + ":");
        write_terms(lw, m, row.terms);
        lw.append(sense_str(row.sense));
        lw.append(num(row.rhs));
        lw.end();
    }

    out += "Bounds\n";
    for (const auto& v : m.variables) {
        if (v.kind == VarKind::Binary) continue;  // implied [0,1] via Binaries
        if (v.lo == v.hi) {
            out += " " + v.name + " = " + num(v.lo) + "\n";
        } else {
            out += " " + num(v.lo) + " <= " + v.name + " <= " + num(v.hi) + "\n";
        }
    }

    bool any_binary = false;
    for (const auto& v : m.variables)
        if (v.kind == VarKind::Binary) {
            any_binary = true;
            break;
        }
    if (any_binary) {
        out += "Binaries\n";
        lw.begin("");
        for (const auto& v : m.variables)
            if (v.kind == VarKind::Binary) lw.append(v.name);
        lw.end();
    }
    out += "End\n";
    return out;
}

}  // namespace sgc
