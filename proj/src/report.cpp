#include "wavecouple/report.hpp"

#include <cstdio>
#include <fstream>

#include "wavecouple/errors.hpp"

namespace wavecouple {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // LF endings on every platform
    if (!out) throw ParseError("cannot write " + path);
    return out;
}

}  // namespace

void Report::put(const std::string& key, double value) { rows_.emplace_back(key, fmt17(value)); }
void Report::put(const std::string& key, const std::string& value) {
    rows_.emplace_back(key, value);
}
void Report::put(const std::string& key, bool value) {
    rows_.emplace_back(key, value ? "true" : "false");
}

std::string Report::text() const {
    std::string out;
    for (const auto& [k, v] : rows_) {
        out += k;
        out += " = ";
        out += v;
        out += "\n";
    }
    return out;
}

void Report::write(const std::string& path) const {
    auto out = open_out(path);
    out << text();
}

void write_triple_csv(const std::string& path, const Field& u, const Field& v,
                      const Field& h) {
    auto out = open_out(path);
    out << "t,x,u,v,h\n";
    const Grid& g = u.grid;
    for (int it = 0; it < g.nt; ++it)
        for (int j = 0; j < g.nx; ++j)
            out << fmt17(g.t(it)) << ',' << fmt17(g.x(j)) << ',' << fmt17(u.at(it, j)) << ','
                << fmt17(v.at(it, j)) << ',' << fmt17(h.at(it, j)) << "\n";
}

void write_field_csv(const std::string& path, const Field& f) {
    auto out = open_out(path);
    out << "t,x," << (f.name.empty() ? "value" : f.name) << "\n";
    const Grid& g = f.grid;
    for (int it = 0; it < g.nt; ++it)
        for (int j = 0; j < g.nx; ++j)
            out << fmt17(g.t(it)) << ',' << fmt17(g.x(j)) << ',' << fmt17(f.at(it, j)) << "\n";
}

void write_covering_csv(const std::string& path, const CoveringSet& c) {
    auto out = open_out(path);
    out << "i,a_i,b_i,x_i\n";
    for (int i = 0; i < c.size(); ++i)
        out << (i + 1) << ',' << fmt17(c.rects[i].first) << ',' << fmt17(c.rects[i].second)
            << ',' << fmt17(c.centers[i]) << "\n";
}

void write_trace_csv(const std::string& path, const std::vector<double>& t,
                     const std::vector<double>& value) {
    auto out = open_out(path);
    out << "t,value\n";
    for (size_t i = 0; i < t.size(); ++i)
        out << fmt17(t[i]) << ',' << fmt17(value[i]) << "\n";
}

void write_iteration_csv(const std::string& path, const std::vector<double>& residual,
                         const std::vector<double>& damping) {
    auto out = open_out(path);
    out << "iter,residual_inf,step_damping\n";
    for (size_t i = 0; i < residual.size(); ++i)
        out << i << ',' << fmt17(residual[i]) << ',' << fmt17(damping[i]) << "\n";
}

}  // namespace wavecouple
