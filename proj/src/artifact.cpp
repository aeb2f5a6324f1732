#include "uqa/artifact.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace uqa {

namespace {

constexpr const char* kMagic = "uqa-artifact/1";

std::string wrap(const std::string& kind, const std::string& payload) {
    std::ostringstream os;
    os << kMagic << "\n";
    os << "kind: " << kind << "\n";
    os << "digest: " << digest64(payload) << "\n";
    os << "payload:\n";
    os << payload;
    return os.str();
}

struct Reader {
    std::istringstream in;
    std::string kind;

    explicit Reader(const std::string& text, const std::string& want_kind) : in(text) {
        std::string line;
        if (!std::getline(in, line) || line != kMagic) throw ParseError("artifact: bad magic line");
        if (!std::getline(in, line) || line.rfind("kind: ", 0) != 0)
            throw ParseError("artifact: missing kind");
        kind = line.substr(6);
        if (!want_kind.empty() && kind != want_kind)
            throw ParseError("artifact: expected kind '" + want_kind + "', found '" + kind + "'");
        if (!std::getline(in, line) || line.rfind("digest: ", 0) != 0)
            throw ParseError("artifact: missing digest");
        std::string digest = line.substr(8);
        if (!std::getline(in, line) || line != "payload:")
            throw ParseError("artifact: missing payload marker");
        std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (digest64(payload) != digest) throw ParseError("artifact: digest mismatch");
        in = std::istringstream(payload);
    }

    std::string expect_key(const std::string& key) {
        std::string line;
        if (!std::getline(in, line) || line.rfind(key + ": ", 0) != 0)
            throw ParseError("artifact: expected '" + key + ":'");
        return line.substr(key.size() + 2);
    }
    bool next_line(std::string& line) { return static_cast<bool>(std::getline(in, line)); }
};

int to_int(const std::string& s) {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw ParseError("artifact: bad integer '" + s + "'");
    return v;
}

std::vector<int> split_ints(const std::string& s, char sep) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, sep)) out.push_back(to_int(tok));
    return out;
}

std::string diagram_str(const Diagram& d) {
    std::ostringstream os;
    os << "x=";
    for (size_t s = 0; s < d.xlen.size(); ++s) {
        if (s) os << '|';
        os << d.xlen[s];
    }
    os << " y=";
    auto yw = d.ywords();
    for (size_t s = 0; s < yw.size(); ++s) {
        if (s) os << '|';
        for (size_t k = 0; k < yw[s].size(); ++k) {
            if (k) os << ',';
            os << yw[s][k];
        }
    }
    return os.str();
}

Diagram parse_diagram(const std::string& s) {
    auto ypos = s.find(" y=");
    if (s.rfind("x=", 0) != 0 || ypos == std::string::npos)
        throw ParseError("artifact: bad diagram '" + s + "'");
    std::string xs = s.substr(2, ypos - 2);
    std::string ys = s.substr(ypos + 3);
    Diagram d;
    {
        std::istringstream is(xs);
        std::string tok;
        while (std::getline(is, tok, '|')) d.xlen.push_back(to_int(tok));
    }
    std::vector<AssocWord> yw;
    {
        size_t slots = 1;
        for (char c : ys)
            if (c == '|') ++slots;
        yw.resize(slots);
        size_t idx = 0;
        std::string cur;
        for (char c : ys) {
            if (c == '|') {
                yw[idx++] = split_ints(cur, ',');
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        yw[idx] = split_ints(cur, ',');
    }
    if (yw.size() != d.xlen.size()) throw ParseError("artifact: diagram slot mismatch");
    d.ylen.reserve(yw.size());
    for (const auto& w : yw) {
        d.ylen.push_back(static_cast<int>(w.size()));
        for (Tag t : w) d.ytags.push_back(t);
    }
    int N = 0;
    for (int l : d.xlen) N += l;
    if (static_cast<int>(d.ytags.size()) != N) throw ParseError("artifact: diagram tag count");
    return d;
}

void dump_useries_payload(std::ostringstream& os, const USeries& s) {
    os << "n: " << s.n << "\n";
    os << "order: " << s.order << "\n";
    for (int k = 0; k <= s.order; ++k) {
        os << "deg " << k << ": " << s.comp[k].terms.size() << "\n";
        for (const auto& [d, c] : s.comp[k].terms) os << c.str() << " * " << diagram_str(d) << "\n";
    }
}

USeries read_useries_payload(Reader& r) {
    USeries s;
    s.n = to_int(r.expect_key("n"));
    s.order = to_int(r.expect_key("order"));
    s.comp.assign(s.order + 1, u_zero(s.n));
    for (int k = 0; k <= s.order; ++k) {
        int count = to_int(r.expect_key("deg " + std::to_string(k)));
        for (int t = 0; t < count; ++t) {
            std::string line;
            if (!r.next_line(line)) throw ParseError("artifact: truncated element list");
            auto star = line.find(" * ");
            if (star == std::string::npos) throw ParseError("artifact: bad term '" + line + "'");
            Rat c = Rat::parse(line.substr(0, star));
            Diagram d = parse_diagram(line.substr(star + 3));
            if (d.slots() != s.n || d.degree() != k) throw ParseError("artifact: term shape mismatch");
            u_add_term(s.comp[k], d, c);
        }
    }
    return s;
}

std::string chord_word_text(const ChordWord& w) {
    std::ostringstream os;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) os << ' ';
        auto [i, j] = ChordGen::unpack(w[k]);
        os << i << '.' << j;
    }
    return os.str();
}

ChordWord parse_chord_word(const std::string& s) {
    ChordWord w;
    if (s.empty()) return w;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        auto dot = tok.find('.');
        if (dot == std::string::npos) throw ParseError("artifact: bad chord letter '" + tok + "'");
        int i = to_int(tok.substr(0, dot));
        int j = to_int(tok.substr(dot + 1));
        w.push_back(ChordGen::pack(i, j));
    }
    return w;
}

void dump_chord_payload(std::ostringstream& os, const ChordSeries& s) {
    os << "n: " << s.n << "\n";
    os << "order: " << s.order << "\n";
    for (int k = 0; k <= s.order; ++k) {
        os << "deg " << k << ": " << s.comp[k].terms.size() << "\n";
        for (const auto& [w, c] : s.comp[k].terms)
            os << c.str() << " * [" << chord_word_text(w) << "]\n";
    }
}

ChordSeries read_chord_payload(Reader& r) {
    ChordSeries s;
    s.n = to_int(r.expect_key("n"));
    s.order = to_int(r.expect_key("order"));
    s.comp.assign(s.order + 1, chord_zero(s.n));
    for (int k = 0; k <= s.order; ++k) {
        int count = to_int(r.expect_key("deg " + std::to_string(k)));
        for (int t = 0; t < count; ++t) {
            std::string line;
            if (!r.next_line(line)) throw ParseError("artifact: truncated element list");
            auto star = line.find(" * [");
            if (star == std::string::npos || line.empty() || line.back() != ']')
                throw ParseError("artifact: bad chord term '" + line + "'");
            Rat c = Rat::parse(line.substr(0, star));
            ChordWord w = parse_chord_word(line.substr(star + 4, line.size() - star - 5));
            if (static_cast<int>(w.size()) != k) throw ParseError("artifact: chord degree mismatch");
            ChordElement e{s.n, {}};
            e.terms.emplace(std::move(w), c);
            chord_add(s.comp[k], e);
        }
    }
    return s;
}

} // namespace

std::string digest64(const std::string& payload) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    for (int k = 15; k >= 0; --k) os << ((h >> (4 * k)) & 0xF);
    return os.str();
}

std::string serialize_chord_series(const ChordSeries& s) {
    std::ostringstream os;
    dump_chord_payload(os, s);
    return wrap("chord-series", os.str());
}

ChordSeries parse_chord_series(const std::string& text) {
    Reader r(text, "chord-series");
    return read_chord_payload(r);
}

std::string serialize_useries(const USeries& s) {
    std::ostringstream os;
    dump_useries_payload(os, s);
    return wrap("u-series", os.str());
}

USeries parse_useries(const std::string& text) {
    Reader r(text, "u-series");
    return read_useries_payload(r);
}

std::string serialize_associator(const Associator& a) {
    std::ostringstream os;
    os << "order: " << a.order << "\n";
    os << "phi2: " << a.phi2_coefficient.str() << "\n";
    dump_chord_payload(os, a.phi);
    return wrap("associator", os.str());
}

Associator parse_associator(const std::string& text) {
    Reader r(text, "associator");
    Associator a;
    a.order = to_int(r.expect_key("order"));
    a.phi2_coefficient = Rat::parse(r.expect_key("phi2"));
    a.phi = read_chord_payload(r);
    return a;
}

std::string serialize_twist(const Twist& t) {
    std::ostringstream os;
    os << "order: " << t.order << "\n";
    dump_useries_payload(os, t.j);
    dump_chord_payload(os, t.phi);
    return wrap("twist", os.str());
}

Twist parse_twist(const std::string& text) {
    Reader r(text, "twist");
    Twist t;
    t.order = to_int(r.expect_key("order"));
    t.j = read_useries_payload(r);
    t.phi = read_chord_payload(r);
    return t;
}

std::string serialize_rmatrix(const RMatrix& rm) {
    std::ostringstream os;
    os << "order: " << rm.order << "\n";
    dump_useries_payload(os, rm.r_series);
    return wrap("rmatrix", os.str());
}

RMatrix parse_rmatrix(const std::string& text) {
    Reader r(text, "rmatrix");
    RMatrix rm;
    rm.order = to_int(r.expect_key("order"));
    rm.r_series = read_useries_payload(r);
    return rm;
}

std::string serialize_bialgebra(const LieBialgebra& b) {
    std::ostringstream os;
    os << "dim: " << b.dim << "\n";
    for (int i = 1; i <= b.dim; ++i)
        for (int j = 1; j <= b.dim; ++j)
            for (int k = 1; k <= b.dim; ++k)
                if (!b.f(i, j, k).is_zero())
                    os << "f " << i << " " << j << " " << k << " " << b.f(i, j, k).str() << "\n";
    for (int k = 1; k <= b.dim; ++k)
        for (int i = 1; i <= b.dim; ++i)
            for (int j = 1; j <= b.dim; ++j)
                if (!b.g(k, i, j).is_zero())
                    os << "g " << k << " " << i << " " << j << " " << b.g(k, i, j).str() << "\n";
    return wrap("bialgebra", os.str());
}

LieBialgebra parse_bialgebra(const std::string& text) {
    Reader r(text, "bialgebra");
    LieBialgebra b(to_int(r.expect_key("dim")));
    std::string line;
    while (r.next_line(line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string tag;
        int i, j, k;
        std::string val;
        if (!(is >> tag >> i >> j >> k >> val)) throw ParseError("artifact: bad constant line");
        if (tag == "f") b.f(i, j, k) = Rat::parse(val);
        else if (tag == "g") b.g(i, j, k) = Rat::parse(val);
        else throw ParseError("artifact: unknown constant tag '" + tag + "'");
    }
    return b;
}

std::string serialize_report(const ReportArtifact& r) {
    std::ostringstream os;
    os << "name: " << r.name << "\n";
    for (const auto& l : r.lines) {
        os << "check " << l.id << " " << (l.pass ? "pass" : "fail");
        if (!l.detail.empty()) os << " # " << l.detail;
        os << "\n";
    }
    return wrap("report", os.str());
}

std::string artifact_kind(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kMagic) throw ParseError("artifact: bad magic line");
    if (!std::getline(in, line) || line.rfind("kind: ", 0) != 0)
        throw ParseError("artifact: missing kind");
    return line.substr(6);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace uqa
