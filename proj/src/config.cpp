#include "cvbell/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cvbell {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail_at(const std::string& text, std::size_t pos, const std::string& why) {
    throw ParseError("malformed complex literal \"" + text + "\" at position " +
                     std::to_string(pos) + ": " + why);
}

// Parses a float starting at pos; advances pos past it.
double parse_number(const std::string& text, std::size_t& pos) {
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    double value = 0.0;
    // from_chars rejects a leading '+'
    const bool plus = pos < text.size() && text[pos] == '+';
    const auto [ptr, ec] = std::from_chars(begin + (plus ? 1 : 0), end, value);
    if (ec != std::errc{} || ptr == begin + (plus ? 1 : 0)) {
        fail_at(text, pos, "expected a number");
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
}

std::size_t skip_ws(const std::string& text, std::size_t pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return pos;
}

Complex require_finite(Complex z, const std::string& key) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ParseError("amplitude \"" + key + "\" must be finite");
    }
    return z;
}

Complex json_to_complex(const ordered_json& j, const std::string& key) {
    if (j.is_string()) return require_finite(parse_complex(j.get<std::string>()), key);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return require_finite({j[0].get<double>(), j[1].get<double>()}, key);
    }
    if (j.is_number()) return require_finite({j.get<double>(), 0.0}, key);
    throw ParseError("amplitude \"" + key + "\" must be \"x+yi\" or [re, im]");
}

ordered_json complex_to_json(Complex z) {
    return ordered_json::array({z.real(), z.imag()});
}

double require_number(const ordered_json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ParseError("config field \"" + key + "\" must be a number");
    }
    return j[key].get<double>();
}

AxisRange json_to_axis(const ordered_json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 3) {
        throw ParseError("scan axis \"" + key + "\" must be [lo, hi, count]");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<int>()};
}

Eigen::VectorXd json_to_vector(const ordered_json& j, const std::string& key) {
    if (!j.is_array()) throw ParseError("\"" + key + "\" must be an array of numbers");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

ordered_json vector_to_json(const Eigen::VectorXd& v) {
    ordered_json j = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    std::size_t pos = skip_ws(text, 0);
    if (pos == text.size()) fail_at(text, pos, "empty literal");

    auto at_imag_unit = [&](std::size_t p) {
        return p < text.size() && (text[p] == 'i' || text[p] == 'j');
    };
    auto bare_imag = [&](std::size_t p, double sign) -> std::optional<Complex> {
        // "i", "+i", "-i"
        if (at_imag_unit(p) && skip_ws(text, p + 1) == text.size()) {
            return Complex{0.0, sign};
        }
        return std::nullopt;
    };

    if (auto c = bare_imag(pos, 1.0)) return *c;
    if ((text[pos] == '+' || text[pos] == '-')) {
        if (auto c = bare_imag(pos + 1, text[pos] == '-' ? -1.0 : 1.0)) return *c;
    }

    const double first = parse_number(text, pos);
    if (at_imag_unit(pos)) {  // pure imaginary "yi"
        const std::size_t after = skip_ws(text, pos + 1);
        if (after != text.size()) fail_at(text, after, "trailing characters");
        return {0.0, first};
    }
    std::size_t p = skip_ws(text, pos);
    if (p == text.size()) return {first, 0.0};

    if (text[p] != '+' && text[p] != '-') {
        fail_at(text, p, "expected '+', '-' or 'i'");
    }
    const double sign = text[p] == '-' ? -1.0 : 1.0;
    std::size_t q = skip_ws(text, p + 1);
    double imag;
    if (at_imag_unit(q)) {  // "x+i" / "x-i"
        imag = sign;
        ++q;
    } else {
        imag = sign * parse_number(text, q);
        if (!at_imag_unit(q)) fail_at(text, q, "expected 'i' after imaginary part");
        ++q;
    }
    q = skip_ws(text, q);
    if (q != text.size()) fail_at(text, q, "trailing characters");
    return {first, imag};
}

RunConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config must be a JSON object");

    RunConfig c;
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw ParseError("config field \"kind\" must be \"bell\" or \"mermin\"");
    }
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "bell") {
        c.kind = Kind::bell;
    } else if (kind == "mermin") {
        c.kind = Kind::mermin;
    } else {
        throw ParseError("unknown kind \"" + kind + "\"");
    }

    if (j.contains("amplitudes")) {
        const auto& a = j["amplitudes"];
        if (!a.is_object()) throw ParseError("\"amplitudes\" must be an object");
        auto read = [&](const char* key, Complex& dst) {
            if (a.contains(key)) dst = json_to_complex(a[key], key);
        };
        read("z", c.z);
        read("z_prime", c.z_prime);
        read("w", c.w);
        read("w_prime", c.w_prime);
        read("zeta", c.zeta);
        read("zeta_prime", c.zeta_prime);
    }
    if (j.contains("state")) {
        const auto& s = j["state"];
        if (!s.is_object()) throw ParseError("\"state\" must be an object");
        c.eta = require_number(s, "eta");
        c.sigma = require_number(s, "sigma");
        if (c.kind == Kind::mermin) {
            c.tau = require_number(s, "tau");
        } else if (s.contains("tau")) {
            c.tau = s["tau"].get<double>();
        }
    }
    if (j.contains("scan")) {
        const auto& s = j["scan"];
        ScanBlock block;
        if (s.contains("eta")) block.eta_range = json_to_axis(s["eta"], "eta");
        if (s.contains("sigma")) block.sigma_range = json_to_axis(s["sigma"], "sigma");
        c.scan = block;
    }
    if (j.contains("optimize")) {
        const auto& o = j["optimize"];
        OptimizeBlock block;
        if (o.contains("starts")) block.starts = o["starts"].get<int>();
        if (o.contains("lo")) block.lo = json_to_vector(o["lo"], "lo");
        if (o.contains("hi")) block.hi = json_to_vector(o["hi"], "hi");
        if (o.contains("warm_start")) {
            block.warm_start = json_to_vector(o["warm_start"], "warm_start");
        }
        c.optimize = block;
    }
    if (j.contains("output")) c.output_path = j["output"].get<std::string>();
    if (j.contains("seed")) c.rng_seed = j["seed"].get<int>();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
    ordered_json j;
    j["kind"] = kind_name(c.kind);
    ordered_json amps;
    amps["z"] = complex_to_json(c.z);
    amps["z_prime"] = complex_to_json(c.z_prime);
    amps["w"] = complex_to_json(c.w);
    amps["w_prime"] = complex_to_json(c.w_prime);
    if (c.kind == Kind::mermin) {
        amps["zeta"] = complex_to_json(c.zeta);
        amps["zeta_prime"] = complex_to_json(c.zeta_prime);
    }
    j["amplitudes"] = amps;
    ordered_json state;
    state["eta"] = c.eta;
    state["sigma"] = c.sigma;
    if (c.kind == Kind::mermin) state["tau"] = c.tau;
    j["state"] = state;
    if (c.scan) {
        j["scan"] = {
            {"eta", {c.scan->eta_range.lo, c.scan->eta_range.hi, c.scan->eta_range.count}},
            {"sigma",
             {c.scan->sigma_range.lo, c.scan->sigma_range.hi, c.scan->sigma_range.count}}};
    }
    if (c.optimize) {
        ordered_json o;
        o["starts"] = c.optimize->starts;
        if (c.optimize->lo) o["lo"] = vector_to_json(*c.optimize->lo);
        if (c.optimize->hi) o["hi"] = vector_to_json(*c.optimize->hi);
        if (c.optimize->warm_start) {
            o["warm_start"] = vector_to_json(*c.optimize->warm_start);
        }
        j["optimize"] = o;
    }
    if (!c.output_path.empty()) j["output"] = c.output_path;
    j["seed"] = c.rng_seed;
    return j.dump(2) + "\n";
}

RunConfig preset_config(const std::string& name) {
    RunConfig c;
    if (name == "bell-paper") {
        c.kind = Kind::bell;
        c.z = {0.01, 0.12211};
        c.z_prime = {0.01, -0.67795};
        c.w = {0.001, 0.122};
        c.w_prime = {0.01, -0.67826};
        // argmax cell of the default scan below
        c.eta = 0.05;
        c.sigma = 0.05;
    } else if (name == "mermin-paper") {
        c.kind = Kind::mermin;
        c.z = {0.020091, -0.00055757};
        c.z_prime = {0.040244, -0.00114505};
        c.w = {0.015207, -0.0000692535};
        c.w_prime = {0.036766, -0.00036440};
        c.zeta = {0.0247087, -0.00050390};
        c.zeta_prime = {0.0437431, -0.00087464};
        c.eta = 38.8525;
        c.sigma = 36.5831;
        c.tau = 41.2201;
    } else {
        throw ParseError("unknown preset \"" + name +
                         "\" (expected bell-paper or mermin-paper)");
    }
    c.scan = ScanBlock{};  // eta, sigma in [0.05, 60], 240 x 240
    return c;
}

std::string kind_name(Kind kind) { return kind == Kind::bell ? "bell" : "mermin"; }

std::string violation_name(Violation v) {
    switch (v) {
        case Violation::classical: return "classical";
        case Violation::violation: return "violation";
        case Violation::above_quantum_bound: return "above_quantum_bound";
    }
    return "unknown";
}

}  // namespace cvbell
