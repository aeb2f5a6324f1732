#pragma once

#include "uqa/associator.hpp"
#include "uqa/specialize.hpp"
#include "uqa/twist.hpp"

#include <string>
#include <vector>

namespace uqa {

// Canonical text artifacts: deterministic serialization (map order, exact
// rationals as p/q, no floats anywhere), a content digest over the payload,
// and parse-time digest verification.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

std::string digest64(const std::string& payload); // FNV-1a, 16 hex digits

std::string serialize_chord_series(const ChordSeries& s);
ChordSeries parse_chord_series(const std::string& text);

std::string serialize_useries(const USeries& s);
USeries parse_useries(const std::string& text);

std::string serialize_associator(const Associator& a);
Associator parse_associator(const std::string& text);

std::string serialize_twist(const Twist& t);
Twist parse_twist(const std::string& text);

std::string serialize_rmatrix(const RMatrix& r);
RMatrix parse_rmatrix(const std::string& text);

std::string serialize_bialgebra(const LieBialgebra& b);
LieBialgebra parse_bialgebra(const std::string& text);

struct ReportArtifact {
    std::string name;
    std::vector<CheckLine> lines;
    bool ok() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

std::string serialize_report(const ReportArtifact& r);

// generic header inspection
std::string artifact_kind(const std::string& text);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

} // namespace uqa
