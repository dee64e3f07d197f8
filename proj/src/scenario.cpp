#include "wavecouple/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wavecouple/errors.hpp"
#include "wavecouple/geometry.hpp"

namespace wavecouple {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected `key = value`: " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

SpatialFn sine_fn(double amp, int mode, double L) {
    return SpatialFn{[amp, mode, L](double x, int order) {
        const double w = mode * M_PI / L;
        Jet r(order);
        double pw = 1.0, fact = 1.0;
        for (int n = 0; n <= order; ++n) {
            const double d = (n % 4 == 0)   ? std::sin(w * x)
                             : (n % 4 == 1) ? std::cos(w * x)
                             : (n % 4 == 2) ? -std::sin(w * x)
                                            : -std::cos(w * x);
            r.coeff_ref(n) = amp * d * pw / fact;
            pw *= w;
            fact *= (n + 1);
        }
        return r;
    }};
}

SpatialFn bump_fn(double amp, double center, double width) {
    return SpatialFn{[amp, center, width](double x, int order) {
        const Jet xj = Jet::variable(x, order);
        const Jet u = (xj - center) / width;
        if (std::abs(x - center) >= width) return Jet(order);
        Jet q = 1.0 - u * u;
        Jet q2 = q * q;
        Jet q8 = q2 * q2;
        q8 = q8 * q8;
        return amp * q8;
    }};
}

}  // namespace

Scenario Scenario::parse(const std::string& text) {
    const auto kv = parse_kv(text);
    Scenario s;
    auto get_d = [&](const char* key, double& slot) {
        auto it = kv.find(key);
        if (it != kv.end()) slot = std::stod(it->second);
    };
    auto get_i = [&](const char* key, int& slot) {
        auto it = kv.find(key);
        if (it != kv.end()) slot = std::stoi(it->second);
    };
    auto get_s = [&](const char* key, std::string& slot) {
        auto it = kv.find(key);
        if (it != kv.end()) slot = it->second;
    };
    get_d("nu1", s.nu1);
    get_d("nu2", s.nu2);
    get_d("L", s.L);
    get_d("T", s.T);
    get_d("a", s.a);
    get_d("b", s.b);
    get_s("coupling", s.coupling);
    get_d("coupling_scale", s.coupling_scale);
    get_i("grid.nt", s.nt);
    get_i("grid.nx", s.nx);
    get_d("delta", s.delta);
    get_d("epsilon0", s.epsilon0);
    get_d("kappa", s.kappa);
    get_d("eta", s.eta);
    get_i("jet_order", s.jet_order);
    get_i("compat_order", s.compat_order);
    get_d("profile.delta_prime", s.delta_prime);
    get_d("profile.delta_double_prime", s.delta_double_prime);
    get_i("audit_refine", s.audit_refine);
    get_d("tol.pde_residual", s.tol_pde);
    get_d("tol.newton", s.tol_newton);
    get_d("tol.support", s.tol_support);
    get_d("tol.endpoint", s.tol_endpoint);
    get_d("tol.compat", s.tol_compat);
    get_d("tol.picard", s.tol_picard);
    get_s("data.kind", s.data_kind);
    get_i("data.mode", s.data_mode);
    get_d("data.amplitude", s.data_amplitude);
    get_d("data.center", s.data_center);
    get_d("data.width", s.data_width);
    get_s("data.final", s.data_final);
    get_s("data.file", s.data_file);
    s.validate();
    return s;
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Scenario::serialize() const {
    std::ostringstream out;
    out.precision(17);
    out << "nu1 = " << nu1 << "\n"
        << "nu2 = " << nu2 << "\n"
        << "L = " << L << "\n"
        << "T = " << T << "\n"
        << "a = " << a << "\n"
        << "b = " << b << "\n"
        << "coupling = " << coupling << "\n"
        << "coupling_scale = " << coupling_scale << "\n"
        << "grid.nt = " << nt << "\n"
        << "grid.nx = " << nx << "\n"
        << "delta = " << delta << "\n"
        << "epsilon0 = " << epsilon0 << "\n"
        << "kappa = " << kappa << "\n"
        << "eta = " << eta << "\n"
        << "jet_order = " << jet_order << "\n"
        << "compat_order = " << compat_order << "\n"
        << "profile.delta_prime = " << delta_prime << "\n"
        << "profile.delta_double_prime = " << delta_double_prime << "\n"
        << "audit_refine = " << audit_refine << "\n"
        << "tol.pde_residual = " << tol_pde << "\n"
        << "tol.newton = " << tol_newton << "\n"
        << "tol.support = " << tol_support << "\n"
        << "tol.endpoint = " << tol_endpoint << "\n"
        << "tol.compat = " << tol_compat << "\n"
        << "tol.picard = " << tol_picard << "\n"
        << "data.kind = " << data_kind << "\n"
        << "data.mode = " << data_mode << "\n"
        << "data.amplitude = " << data_amplitude << "\n"
        << "data.center = " << data_center << "\n"
        << "data.width = " << data_width << "\n"
        << "data.final = " << data_final << "\n"
        << "data.file = " << data_file << "\n";
    return out.str();
}

void Scenario::validate() const {
    if (!(nu1 > 0.0) || !(nu2 > 0.0)) throw ParseError("speeds must be positive");
    if (!(0.0 <= a && a < b && b <= L)) throw ParseError("need 0 <= a < b <= L");
    if (!(T > 0.0) || nt < 9 || nx < 9) throw ParseError("bad grid block");
    if (!(tol_pde > 0.0 && tol_newton > 0.0 && tol_support > 0.0 && tol_endpoint > 0.0 &&
          tol_compat > 0.0))
        throw ParseError("tolerances must be positive");
    if (!check_time(T, L, a, b, nu1, nu2)) throw ParseError("time condition fails");
    if (data_kind != "zero" && data_kind != "sine" && data_kind != "bump" &&
        data_kind != "file")
        throw ParseError("unknown data kind " + data_kind);
    if (coupling != "cubic" && coupling != "linear+cubic" && coupling != "linear")
        throw ParseError("unknown coupling " + coupling);
}

EndpointData Scenario::make_data() const {
    EndpointData d;
    if (data_kind == "zero") return d;
    if (data_kind == "sine") {
        d.u0 = sine_fn(data_amplitude, data_mode, L);
        d.v0 = sine_fn(data_amplitude, data_mode, L);
    } else if (data_kind == "bump") {
        d.u0 = bump_fn(data_amplitude, data_center, data_width);
        d.v0 = bump_fn(data_amplitude, data_center, data_width);
    } else {
        throw ParseError("file data is read via the CLI, not the scenario block");
    }
    if (data_final == "sine") {
        d.u0f = sine_fn(data_amplitude, data_mode, L);
        d.v0f = sine_fn(data_amplitude, data_mode, L);
    }
    return d;
}

CouplingSpec Scenario::make_coupling() const {
    if (coupling == "cubic") return CouplingSpec::cubic();
    if (coupling == "linear+cubic")
        return CouplingSpec::general(Poly2::zero(), Poly2::linear_plus_cubic_u());
    return CouplingSpec::general(Poly2::zero(), Poly2::linear_u(coupling_scale));
}

Scenario default_scenario() {
    Scenario s;
    s.nu1 = s.nu2 = 750.0;
    s.L = 8.7;
    s.T = 1.7;
    s.a = 3.5;
    s.b = 5.185;
    s.delta = 0.42;
    s.epsilon0 = 0.17;
    s.data_kind = "zero";
    return s;
}

Scenario steering_scenario() {
    Scenario s;  // the declaration defaults are the steering run
    return s;
}

}  // namespace wavecouple
