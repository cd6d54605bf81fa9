#include "wpdo/builtins.hpp"

#include <cmath>
#include <map>

namespace wpdo {

namespace {

struct Spec {
    std::string name;
    std::map<std::string, double> params;
};

Spec parse_spec(const std::string& text) {
    Spec spec;
    const auto colon = text.find(':');
    spec.name = text.substr(0, colon);
    if (colon == std::string::npos) return spec;
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        const auto comma = rest.find(',', pos);
        const std::string item = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw_config("builtin spec: expected key=value in '" + item + "'");
        try {
            spec.params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw_config("builtin spec: bad numeric value in '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return spec;
}

double param(const Spec& s, const std::string& key, double fallback) {
    auto it = s.params.find(key);
    return it == s.params.end() ? fallback : it->second;
}

}  // namespace

WeightFunction builtin_weight(const std::string& text) {
    const Spec spec = parse_spec(text);
    if (spec.name == "bracket") return bracket_weight();
    if (spec.name == "constant") return constant_weight();
    if (spec.name == "even_power")
        return even_power_weight(static_cast<int>(param(spec, "p", 2)));
    throw_config("unknown weight '" + spec.name + "'");
}

Symbol builtin_symbol(const std::string& text, const WeightFunction& w) {
    const Spec spec = parse_spec(text);
    const std::string& n = spec.name;

    if (n == "one")
        return Symbol([](double, long) { return cplx(1.0, 0.0); }, 0.0, 1.0, w,
                      SymbolSide::Torus, KRange::all(), 8, n);
    if (n == "bracket_power") {
        const double m = param(spec, "m", 1.0);
        return Symbol([w, m](double, long k) { return cplx(std::pow(w(k), m), 0.0); }, m, 1.0, w,
                      SymbolSide::Torus, KRange::all(), 8, n);
    }
    if (n == "bessel") {
        const double s = param(spec, "s", 1.0);
        return Symbol([w, s](double, long k) { return cplx(std::pow(w(k), -s), 0.0); }, -s, 1.0,
                      w, SymbolSide::Torus, KRange::all(), 8, n);
    }
    if (n == "shear" || n == "shear2" || n == "halfshear") {
        const double m = n == "shear" ? 1.0 : (n == "shear2" ? 2.0 : 0.5);
        return Symbol(
            [w, m](double x, long k) { return cplx((2.0 + std::sin(x)) * std::pow(w(k), m), 0.0); },
            m, 1.0, w, SymbolSide::Torus, KRange::all(), 16, n);
    }
    if (n == "rotate")
        return Symbol([](double x, long) { return cplx(std::cos(x), std::sin(x)); }, 0.0, 1.0, w,
                      SymbolSide::Torus, KRange::all(), 16, n);
    if (n == "decay0")
        return Symbol(
            [](double x, long k) {
                return cplx((2.0 + std::cos(x)) / (1.0 + std::abs(static_cast<double>(k))), 0.0);
            },
            0.0, 1.0, w, SymbolSide::Torus, KRange::all(), 16, n);
    if (n == "sep_decay")
        return Symbol(
            [w](double x, long k) { return cplx(std::cos(x), std::sin(x)) / w(k); },
            0.0, 1.0, w, SymbolSide::Torus, KRange::all(), 16, n);
    if (n == "sep_one")
        return Symbol([](double x, long) { return cplx(std::cos(x), std::sin(x)); }, 0.0, 1.0, w,
                      SymbolSide::Torus, KRange::all(), 16, n);
    if (n == "nonneg_touching") {
        const double m = param(spec, "m", 1.0);
        return Symbol(
            [w, m](double x, long k) { return cplx((1.0 + std::sin(x)) * std::pow(w(k), m), 0.0); },
            m, 1.0, w, SymbolSide::Torus, KRange::all(), 16, n);
    }
    if (n == "shifted_laplace") {
        const double c = param(spec, "c", 5.0);
        return Symbol([w, c](double, long k) { return cplx(w(k) * w(k) - c, 0.0); }, 2.0, 1.0, w,
                      SymbolSide::Torus, KRange::all(), 8, n);
    }
    // deliberately broken declarations, kept for the rejection paths
    if (n == "kmode")
        return Symbol([](double, long k) { return cplx(static_cast<double>(k), 0.0); }, 0.0, 1.0,
                      w, SymbolSide::Torus, KRange::all(), 8, n);
    if (n == "rough")
        return Symbol(
            [w](double, long k) { return cplx(std::sin(static_cast<double>(k)), 0.0); }, 0.0, 1.0,
            w, SymbolSide::Torus, KRange::all(), 8, n);

    if (n == "latt_one")
        return Symbol([](double, long) { return cplx(1.0, 0.0); }, 0.0, 1.0, w,
                      SymbolSide::Lattice, KRange::all(), 8, n);
    if (n == "latt_shift")
        return Symbol([](double x, long) { return cplx(std::cos(x), -std::sin(x)); }, 0.0, 1.0, w,
                      SymbolSide::Lattice, KRange::all(), 16, n);
    if (n == "latt_mult")
        return Symbol([w](double, long nn) { return cplx(1.0 / w(nn), 0.0); }, -1.0, 1.0, w,
                      SymbolSide::Lattice, KRange::all(), 8, n);
    if (n == "latt_mixed")
        return Symbol([w](double x, long nn) { return cplx((2.0 + std::cos(x)) / w(nn), 0.0); },
                      -1.0, 1.0, w, SymbolSide::Lattice, KRange::all(), 16, n);
    if (n == "latt_imag")
        return Symbol([w](double, long nn) { return cplx(0.0, 1.0 / w(nn)); }, -1.0, 1.0, w,
                      SymbolSide::Lattice, KRange::all(), 8, n);
    if (n == "latt_bracket_power") {
        const double m = param(spec, "m", 2.0);
        return Symbol([w, m](double, long nn) { return cplx(std::pow(w(nn), m), 0.0); }, m, 1.0,
                      w, SymbolSide::Lattice, KRange::all(), 8, n);
    }

    throw_config("unknown built-in symbol '" + n + "'");
}

std::vector<std::string> builtin_torus_names(bool include_broken) {
    std::vector<std::string> names = {
        "one",     "bracket_power:m=1", "bracket_power:m=-1", "bessel:s=1", "shear",
        "shear2",  "halfshear",         "rotate",             "decay0",     "sep_decay",
        "sep_one", "nonneg_touching",   "shifted_laplace"};
    if (include_broken) {
        names.push_back("kmode");
        names.push_back("rough");
    }
    return names;
}

std::vector<std::string> builtin_lattice_names() {
    return {"latt_one", "latt_shift", "latt_mult", "latt_mixed", "latt_imag",
            "latt_bracket_power:m=2"};
}

}  // namespace wpdo
