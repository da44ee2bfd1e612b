#include "ffsalem/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ffsalem/errors.hpp"

namespace ffsalem {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    const std::string t = strip(s);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::ParseError, std::string(what) + ": expected integer, got '" + t + "'");
    return std::stoull(t);
}

double parse_double(const std::string& s, const char* what) {
    const std::string t = strip(s);
    try {
        std::size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, std::string(what) + ": bad number '" + t + "'");
    }
}

// "q=<p>^<n> d=<d>" with optional "k=<k>". Returns (field, d, k or 0).
struct Header {
    FieldRef ctx;
    std::uint32_t d = 0;
    std::uint32_t k = 0;
    bool has_k = false;
};

Header parse_header(const std::string& line) {
    Header h;
    bool has_q = false, has_d = false;
    for (const std::string& tokRaw : split(strip(line), ' ')) {
        const std::string tok = strip(tokRaw);
        if (tok.empty()) continue;
        const std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ParseError, "header: stray token '" + tok + "'");
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "q") {
            auto [p, n] = parse_field_spec(val);
            h.ctx = make_field(p, n);
            has_q = true;
        } else if (key == "d") {
            h.d = std::uint32_t(parse_u64(val, "header d"));
            has_d = true;
        } else if (key == "k") {
            h.k = std::uint32_t(parse_u64(val, "header k"));
            h.has_k = true;
        } else {
            throw Error(ErrorCode::ParseError, "header: unknown key '" + key + "'");
        }
    }
    if (!has_q || !has_d)
        throw Error(ErrorCode::ParseError, "header: need q=<p>^<n> and d=<d>");
    return h;
}

Point parse_point(const FieldCtx& F, std::uint32_t d, const std::string& line) {
    const std::vector<std::string> parts = split(line, ',');
    if (parts.size() != d)
        throw Error(ErrorCode::ParseError,
                    "point: expected " + std::to_string(d) + " coordinates, got '" + line + "'");
    Point pt(d);
    for (std::uint32_t j = 0; j < d; ++j) {
        const std::uint64_t v = parse_u64(parts[j], "coordinate");
        if (v >= F.q())
            throw Error(ErrorCode::ParseError, "point: coordinate " + std::to_string(v) +
                                                   " outside F_" + std::to_string(F.q()));
        pt[j] = elem_t(v);
    }
    return pt;
}

std::string point_line(const Point& pt) {
    std::string s;
    for (std::size_t j = 0; j < pt.size(); ++j) {
        if (j) s += ',';
        s += std::to_string(pt[j]);
    }
    return s;
}

// First non-blank, non-comment line.
bool next_content_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        line = strip(line);
        if (!line.empty() && line[0] != '#') return true;
    }
    return false;
}

} // namespace

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_point_set(std::ostream& os, const PointSet& s) {
    const FieldCtx& F = *s.field();
    os << "q=" << F.spec() << " d=" << s.dim() << "\n";
    for (std::uint64_t idx : s.members())
        os << point_line(decode_point(F, s.dim(), idx)) << "\n";
}

PointSet read_point_set(std::istream& is) {
    std::string line;
    if (!next_content_line(is, line))
        throw Error(ErrorCode::ParseError, "point set: missing header");
    const Header h = parse_header(line);
    if (h.d == 0) throw Error(ErrorCode::ParseError, "point set: d = 0");
    PointSet s(h.ctx, h.d);
    while (next_content_line(is, line))
        s.insert_point(parse_point(*h.ctx, h.d, line));
    return s;
}

void write_family(std::ostream& os, const AffinePlaneFamily& fam) {
    const FieldCtx& F = *fam.ctx;
    os << "q=" << F.spec() << " d=" << fam.d << " k=" << fam.k << "\n";
    for (std::size_t i = 0; i < fam.planes.size(); ++i) {
        if (i) os << "\n";
        const AffinePlane& pl = fam.planes[i];
        for (std::uint32_t r = 0; r < fam.k; ++r) {
            auto row = pl.V.row(r);
            os << point_line(Point(row.begin(), row.end())) << "\n";
        }
        os << "u=" << point_line(pl.shift) << "\n";
    }
}

AffinePlaneFamily read_family(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw Error(ErrorCode::ParseError, "family: missing header");
    line = strip(line);
    while (line.empty() || line[0] == '#') {
        if (!std::getline(is, line))
            throw Error(ErrorCode::ParseError, "family: missing header");
        line = strip(line);
    }
    const Header h = parse_header(line);
    if (!h.has_k) throw Error(ErrorCode::ParseError, "family: header missing k=");
    const FieldCtx& F = *h.ctx;

    std::vector<AffinePlane> planes;
    std::vector<elem_t> rows;
    Point shift(h.d, 0);
    bool have_rows = false;

    auto flush = [&]() {
        if (!have_rows) return;
        if (rows.size() != std::size_t(h.k) * h.d)
            throw Error(ErrorCode::ParseError, "family: plane needs exactly k basis rows");
        AffinePlane pl;
        pl.V = Subspace::from_rows(h.ctx, h.d, rows);
        if (pl.V.k != h.k)
            throw Error(ErrorCode::ParseError, "family: basis rows are dependent");
        pl.shift = shift;
        planes.push_back(std::move(pl));
        rows.clear();
        shift.assign(h.d, 0);
        have_rows = false;
    };

    while (std::getline(is, line)) {
        line = strip(line);
        if (line.empty()) {
            flush();
            continue;
        }
        if (line[0] == '#') continue;
        if (line.rfind("u=", 0) == 0) {
            if (!have_rows)
                throw Error(ErrorCode::ParseError, "family: shift before basis rows");
            shift = parse_point(F, h.d, line.substr(2));
            continue;
        }
        const Point row = parse_point(F, h.d, line);
        rows.insert(rows.end(), row.begin(), row.end());
        have_rows = true;
    }
    flush();
    return AffinePlaneFamily::create(h.ctx, h.d, h.k, std::move(planes));
}

void write_grid(std::ostream& os, const GridFunction& g) {
    os << "# q=" << g.ctx->spec() << " d=" << g.d << "\n";
    os << "index,re,im\n";
    for (std::size_t i = 0; i < g.values.size(); ++i)
        os << i << ',' << fmt_double(g.values[i].real()) << ','
           << fmt_double(g.values[i].imag()) << "\n";
}

GridFunction read_grid(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || strip(line).rfind("# q=", 0) != 0)
        throw Error(ErrorCode::ParseError, "grid csv: missing '# q=...' header");
    const Header h = parse_header(strip(line).substr(2));
    GridFunction g(h.ctx, h.d);
    while (std::getline(is, line)) {
        line = strip(line);
        if (line.empty() || line[0] == '#' || line == "index,re,im") continue;
        const std::vector<std::string> parts = split(line, ',');
        if (parts.size() != 3)
            throw Error(ErrorCode::ParseError, "grid csv: expected index,re,im");
        const std::uint64_t idx = parse_u64(parts[0], "grid index");
        if (idx >= g.values.size())
            throw Error(ErrorCode::ParseError, "grid csv: index out of range");
        g.values[idx] = cplx(parse_double(parts[1], "re"), parse_double(parts[2], "im"));
    }
    return g;
}

void write_measure(std::ostream& os, const Measure& mu) {
    os << "# q=" << mu.grid.ctx->spec() << " d=" << mu.grid.d << "\n";
    os << "index,weight\n";
    if (mu.exact) {
        for (std::size_t i = 0; i < mu.exact->num.size(); ++i)
            if (mu.exact->num[i] != 0)
                os << i << ',' << mu.exact->num[i] << '/' << mu.exact->den << "\n";
    } else {
        for (std::size_t i = 0; i < mu.grid.values.size(); ++i) {
            const double w = mu.grid.values[i].real();
            if (w != 0) os << i << ',' << fmt_double(w) << "\n";
        }
    }
}

Measure read_measure(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || strip(line).rfind("# q=", 0) != 0)
        throw Error(ErrorCode::ParseError, "measure csv: missing '# q=...' header");
    const Header h = parse_header(strip(line).substr(2));
    const std::uint64_t cells = grid_size(*h.ctx, h.d);

    bool exact = true;
    std::vector<std::uint64_t> num(cells, 0);
    std::uint64_t den = 0;
    GridFunction g(h.ctx, h.d);
    while (std::getline(is, line)) {
        line = strip(line);
        if (line.empty() || line[0] == '#' || line == "index,weight") continue;
        const std::vector<std::string> parts = split(line, ',');
        if (parts.size() != 2)
            throw Error(ErrorCode::ParseError, "measure csv: expected index,weight");
        const std::uint64_t idx = parse_u64(parts[0], "measure index");
        if (idx >= cells)
            throw Error(ErrorCode::ParseError, "measure csv: index out of range");
        const std::size_t slash = parts[1].find('/');
        if (slash != std::string::npos) {
            const std::uint64_t a = parse_u64(parts[1].substr(0, slash), "weight numerator");
            const std::uint64_t b = parse_u64(parts[1].substr(slash + 1), "weight denominator");
            if (b == 0) throw Error(ErrorCode::ParseError, "measure csv: zero denominator");
            if (den == 0) den = b;
            if (b != den)
                throw Error(ErrorCode::ParseError, "measure csv: mixed denominators");
            num[idx] = a;
            g.values[idx] = double(a) / double(b);
        } else {
            exact = false;
            g.values[idx] = parse_double(parts[1], "weight");
        }
    }
    if (exact && den != 0) return Measure::from_counts(h.ctx, h.d, std::move(num), den);
    return Measure::from_grid(std::move(g));
}

std::string bound_report_json(const BoundReport& r) {
    nlohmann::json j;
    j["q"] = r.q;
    j["p"] = r.p;
    j["n"] = r.n;
    j["d"] = r.d;
    j["k"] = r.k;
    j["gamma_size"] = r.gamma_size;
    j["support_size"] = r.support_size;
    j["sup_value"] = r.sup_value;
    j["sup_argmax"] = r.sup_argmax;
    j["tight_bound"] = r.tight_bound;
    j["weak_bound"] = r.weak_bound;
    j["lowerb1"] = r.lowerb1;
    j["sizeest"] = r.sizeest;
    j["salem_constant"] = r.salem_constant;
    j["pass"] = r.pass;
    return j.dump(2) + "\n";
}

std::string minimax_report_json(const MinimaxResult& r, const FieldCtx& F, std::uint32_t d) {
    nlohmann::json j;
    j["q"] = F.q();
    j["p"] = F.p();
    j["n"] = F.n();
    j["d"] = d;
    j["support_size"] = r.measure.support_size();
    j["v_star"] = r.value;
    j["certified_lower"] = r.certified_lower;
    j["gap"] = r.gap;
    j["iterations"] = r.iterations;
    j["kappa_effective"] = r.kappa_effective;
    j["converged"] = r.converged;
    return j.dump(2) + "\n";
}

std::string sharpness_report_json(const SharpnessReport& r) {
    nlohmann::json j;
    j["q"] = r.q;
    j["p"] = r.p;
    j["n"] = r.n;
    j["d"] = r.d;
    j["k0_size"] = r.k0_size;
    j["k_size"] = r.k_size;
    j["c"] = r.c;
    j["lower_bound"] = r.lower_bound;
    j["upper_bound"] = r.upper_bound;
    j["incidence_sup"] = r.incidence_sup;
    j["v_star"] = r.v_star;
    j["kappa_effective"] = r.kappa_effective;
    j["gap"] = r.gap;
    j["projection_defect"] = r.projection_defect;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["in_window"] = r.in_window;
    return j.dump(2) + "\n";
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
    os << text;
    if (!os) throw Error(ErrorCode::IoError, "write failed: " + path);
}

std::string load_text(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::IoError, "cannot open: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

namespace {

template <class Fn>
void save_stream(const std::string& path, Fn writer) {
    std::ostringstream ss;
    writer(ss);
    save_text(path, ss.str());
}

} // namespace

void save_point_set(const std::string& path, const PointSet& s) {
    save_stream(path, [&](std::ostream& os) { write_point_set(os, s); });
}

PointSet load_point_set(const std::string& path) {
    std::istringstream is(load_text(path));
    return read_point_set(is);
}

void save_family(const std::string& path, const AffinePlaneFamily& fam) {
    save_stream(path, [&](std::ostream& os) { write_family(os, fam); });
}

AffinePlaneFamily load_family(const std::string& path) {
    std::istringstream is(load_text(path));
    return read_family(is);
}

void save_grid(const std::string& path, const GridFunction& g) {
    save_stream(path, [&](std::ostream& os) { write_grid(os, g); });
}

GridFunction load_grid(const std::string& path) {
    std::istringstream is(load_text(path));
    return read_grid(is);
}

void save_measure(const std::string& path, const Measure& mu) {
    save_stream(path, [&](std::ostream& os) { write_measure(os, mu); });
}

Measure load_measure(const std::string& path) {
    std::istringstream is(load_text(path));
    return read_measure(is);
}

} // namespace ffsalem
