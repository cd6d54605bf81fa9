//
// Python bindings for the main operations: transforms, symbols, quantization,
// calculus, diagnostics and the solver. Vectors cross the boundary as numpy
// complex arrays; reports cross as plain dicts mirroring the JSON schema.
//

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wpdo/builtins.hpp"
#include "wpdo/expression.hpp"
#include "wpdo/io.hpp"
#include "wpdo/solver.hpp"

namespace py = pybind11;
using namespace wpdo;

namespace {

using carray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

GridFunction to_grid(const carray& a) {
    const auto buf = a.request();
    if (buf.ndim != 1) throw_config("expected a 1-d complex array of grid samples");
    GridFunction f(static_cast<int>(buf.shape[0]));
    const cplx* p = static_cast<const cplx*>(buf.ptr);
    std::copy(p, p + buf.shape[0], f.samples.begin());
    return f;
}

carray from_grid(const GridFunction& f) {
    carray out(static_cast<py::ssize_t>(f.size()));
    std::copy(f.samples.begin(), f.samples.end(), static_cast<cplx*>(out.request().ptr));
    return out;
}

CoeffVector to_coeffs(const carray& a) {
    const auto buf = a.request();
    if (buf.ndim != 1 || buf.shape[0] % 2 == 0)
        throw_config("expected an odd-length 1-d array indexed k = -N..N");
    CoeffVector c((buf.shape[0] - 1) / 2);
    const cplx* p = static_cast<const cplx*>(buf.ptr);
    std::copy(p, p + buf.shape[0], c.coeffs.begin());
    return c;
}

carray from_coeffs(const CoeffVector& c) {
    carray out(static_cast<py::ssize_t>(c.size()));
    std::copy(c.coeffs.begin(), c.coeffs.end(), static_cast<cplx*>(out.request().ptr));
    return out;
}

py::array_t<cplx> from_matrix(const DenseOperator& op) {
    py::array_t<cplx> out({op.dim(), op.dim()});
    auto r = out.mutable_unchecked<2>();
    for (long i = 0; i < op.dim(); ++i)
        for (long j = 0; j < op.dim(); ++j) r(i, j) = op.A(i, j);
    return out;
}

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<long>());
        case json::value_t::number_unsigned: return py::int_(j.get<unsigned long>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list l;
            for (const auto& v : j) l.append(json_to_py(v));
            return l;
        }
        case json::value_t::object: {
            py::dict d;
            for (auto it = j.begin(); it != j.end(); ++it)
                d[py::str(it.key())] = json_to_py(it.value());
            return d;
        }
        default: return py::none();
    }
}

Symbol make_symbol(const std::string& spec, const std::string& expr, double order, double rho,
                   const std::string& weight, const std::string& side) {
    const WeightFunction w = builtin_weight(weight);
    if (!expr.empty()) {
        const SymbolSide s = side == "lattice" ? SymbolSide::Lattice : SymbolSide::Torus;
        return expression_symbol(expr, order, rho > 0.0 ? rho : 1.0 / w.mu(), w, s);
    }
    return builtin_symbol(spec, w);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "weighted periodic and discrete pseudo-differential operator toolkit";

    py::register_exception<Error>(m, "WpdoError");

    py::class_<WeightFunction>(m, "WeightFunction")
        .def("__call__", &WeightFunction::operator())
        .def_property_readonly("name", &WeightFunction::name)
        .def_property_readonly("mu0", &WeightFunction::mu0)
        .def_property_readonly("mu1", &WeightFunction::mu1)
        .def_property_readonly("mu", &WeightFunction::mu);

    m.def("weight", &builtin_weight, py::arg("spec") = "bracket",
          "built-in weight: bracket, constant, even_power:p=2");
    m.def(
        "table_weight",
        [](const std::map<long, double>& values, double mu0, double mu1, double mu, double C0,
           double C1) { return table_weight(values, mu0, mu1, mu, C0, C1); },
        py::arg("values"), py::arg("mu0") = 1.0, py::arg("mu1") = 1.0, py::arg("mu") = 1.0,
        py::arg("C0") = 0.5, py::arg("C1") = 2.0);
    m.def("verify_growth", [](const WeightFunction& w, long K) {
        return json_to_py(to_json(verify_growth(w, K)));
    }, py::arg("weight"), py::arg("K") = 256);
    m.def("verify_difference_estimate",
          [](const WeightFunction& w, int alpha_max, long K) {
              return json_to_py(to_json(verify_difference_estimate(w, alpha_max, K)));
          },
          py::arg("weight"), py::arg("alpha_max") = 2, py::arg("K") = 256);

    py::class_<Symbol>(m, "Symbol")
        .def("__call__", &Symbol::operator())
        .def_property_readonly("order", &Symbol::order)
        .def_property_readonly("rho", &Symbol::rho)
        .def_property_readonly("label", &Symbol::label)
        .def_property_readonly("side",
                               [](const Symbol& s) {
                                   return s.side() == SymbolSide::Lattice ? "lattice" : "torus";
                               })
        .def("with_order", &Symbol::with_order);

    m.def(
        "symbol",
        [](const std::string& name, const std::string& expr, double order, double rho,
           const std::string& weight, const std::string& side) {
            return make_symbol(name, expr, order, rho, weight, side);
        },
        py::arg("name") = "", py::arg("expr") = "", py::arg("order") = 0.0, py::arg("rho") = 0.0,
        py::arg("weight") = "bracket", py::arg("side") = "torus",
        "built-in symbol by name, or an expression over x, k, L(k)");
    m.def("builtin_torus_names", &builtin_torus_names, py::arg("include_broken") = false);
    m.def("builtin_lattice_names", &builtin_lattice_names);

    m.def("forward_transform",
          [](const carray& f, long N) { return from_coeffs(forward_transform(to_grid(f), N)); });
    m.def("inverse_transform",
          [](const carray& c, int M) { return from_grid(inverse_transform(to_coeffs(c), M)); });
    m.def("l2_norm", [](const carray& f) { return l2_norm(to_grid(f)); });
    m.def("spectral_derivative", [](const carray& f, int order) {
        return from_grid(spectral_derivative(to_grid(f), order));
    });

    m.def("apply",
          [](const Symbol& s, const carray& f, long N) { return from_grid(apply(s, to_grid(f), N)); });
    m.def("op_matrix", [](const Symbol& s, long N) { return from_matrix(matrix(s, N)); });
    m.def("x_bandwidth", &x_bandwidth, py::arg("symbol"), py::arg("tol") = 1e-12);
    m.def("lattice_apply", [](const Symbol& s, const carray& f, int M) {
        return from_coeffs(lattice_apply(s, to_coeffs(f), M));
    });
    m.def("duality_transfer", &duality_transfer);
    m.def("duality_identity_check", &duality_identity_check);
    m.def("bessel_potential",
          [](double s, const WeightFunction& w) { return bessel_potential(s, w); });

    m.def("compose", &compose);
    m.def("formal_adjoint", &formal_adjoint);
    m.def("parametrix", &parametrix, py::arg("symbol"), py::arg("L"), py::arg("R") = 0);
    m.def("m_ellipticity", [](const Symbol& s, long K) { return json_to_py(to_json(m_ellipticity(s, K))); },
          py::arg("symbol"), py::arg("K") = 64);
    m.def("strong_m_ellipticity",
          [](const Symbol& s, long K) { return json_to_py(to_json(strong_m_ellipticity(s, K))); },
          py::arg("symbol"), py::arg("K") = 64);
    m.def("parametrix_residual", [](const Symbol& s, const Symbol& t, long N) {
        const ResidualProfile p = parametrix_residual(s, t, N);
        return py::make_tuple(p.k, p.left, p.right);
    });
    m.def("cutoff_psi", py::overload_cast<double>(&cutoff_psi));
    m.def("cutoff_psi_scaled", py::overload_cast<double, double>(&cutoff_psi), py::arg("k"),
          py::arg("eps"));
    m.def("inverse_cutoff_symbol", &inverse_cutoff_symbol);
    m.def("asymptotic_sum",
          [](const std::vector<Symbol>& sigmas, const std::vector<double>& eps) {
              return asymptotic_sum(sigmas, eps);
          },
          py::arg("symbols"), py::arg("eps") = std::vector<double>{});
    m.def("seminorm_estimate", &seminorm_estimate, py::arg("symbol"), py::arg("alpha"),
          py::arg("beta"), py::arg("K"), py::arg("M") = 48);
    m.def("forward_difference", &forward_difference);
    m.def("backward_difference", &backward_difference);

    m.def("check_S_membership",
          [](const Symbol& s, int amax, int bmax, const std::vector<long>& windows) {
              return json_to_py(to_json(check_S_membership(s, amax, bmax, windows)));
          },
          py::arg("symbol"), py::arg("alpha_max") = 2, py::arg("beta_max") = 2,
          py::arg("windows") = std::vector<long>{32, 64, 128});
    m.def("check_M_membership",
          [](const Symbol& s, int amax, int bmax, const std::vector<long>& windows) {
              return json_to_py(to_json(check_M_membership(s, amax, bmax, windows)));
          },
          py::arg("symbol"), py::arg("alpha_max") = 2, py::arg("beta_max") = 2,
          py::arg("windows") = std::vector<long>{32, 64, 128});

    m.def("gohberg_d",
          [](const Symbol& s, long K0, long K_max) { return json_to_py(to_json(gohberg_d(s, K0, K_max))); },
          py::arg("symbol"), py::arg("K0") = 16, py::arg("K_max") = 128);
    m.def("compactness_verdict",
          [](const Symbol& s, double threshold) {
              return json_to_py(to_json(compactness_verdict(s, threshold)));
          },
          py::arg("symbol"), py::arg("threshold") = 0.05);
    m.def("essential_spectrum_estimate", [](const Symbol& s) {
        return json_to_py(to_json(essential_spectrum_estimate(s)));
    });
    m.def("distance_to_compacts_lower_bound", &distance_to_compacts_lower_bound,
          py::arg("symbol"), py::arg("K0") = 16, py::arg("K_max") = 128);
    m.def("lattice_fourier", [](const carray& f, int M, bool unitary) {
        return from_grid(lattice_fourier(to_coeffs(f), M, unitary));
    }, py::arg("f"), py::arg("M"), py::arg("unitary") = false);
    m.def("sobolev_operator_norm",
          [](const Symbol& s, long N, double sob_s, double sob_m) {
              return sobolev_operator_norm(matrix(s, N), s.weight(), sob_s, sob_m);
          },
          py::arg("symbol"), py::arg("N"), py::arg("s"), py::arg("m"));
    m.def("sobolev_norm",
          [](const carray& f, double s, const WeightFunction& w) {
              return sobolev_norm(to_grid(f), s, w);
          });
    m.def("weighted_l2_lattice_norm", [](const carray& f, double s, const WeightFunction& w) {
        return weighted_l2_lattice_norm(to_coeffs(f), s, w);
    });
    m.def("garding_constants",
          [](const Symbol& s, double mm, const std::vector<long>& Ns) {
              return json_to_py(to_json(garding_constants(s, mm, Ns)));
          },
          py::arg("symbol"), py::arg("m"), py::arg("N_list") = std::vector<long>{16, 32, 64});
    m.def("sharp_garding_constant",
          [](const Symbol& s, const std::vector<long>& Ns) {
              return json_to_py(to_json(sharp_garding_constant(s, Ns)));
          },
          py::arg("symbol"), py::arg("N_list") = std::vector<long>{16, 32, 64});
    m.def("garding_lattice",
          [](const Symbol& s, double mm, const std::vector<long>& Ns, int samples, unsigned seed) {
              return json_to_py(to_json(garding_lattice(s, mm, Ns, samples, seed)));
          },
          py::arg("symbol"), py::arg("m"), py::arg("N_list") = std::vector<long>{8, 16},
          py::arg("samples") = 200, py::arg("seed") = 20240801u);

    m.def("lambda0_estimate", &lambda0_estimate);
    m.def("uniqueness_check", &uniqueness_check);
    m.def(
        "solve",
        [](const Symbol& s, py::object lam, const carray& f, long N, double tol, bool precondition,
           int L) {
            double lambda = 0.0;
            bool auto_lambda = false;
            if (py::isinstance<py::str>(lam)) {
                if (lam.cast<std::string>() != "auto") throw_config("lambda: number or 'auto'");
                auto_lambda = true;
                lambda = lambda0_estimate(s, s.order() / 2.0, N);
            } else {
                lambda = lam.cast<double>();
            }
            const SolveResult r = solve(s, lambda, to_grid(f), N, tol, precondition, L);
            py::dict d = json_to_py(to_json(r));
            d["lambda"] = lambda;
            d["lambda_auto"] = auto_lambda;
            d["u"] = from_grid(r.u);
            d["u_hat"] = from_coeffs(r.u_hat);
            return d;
        },
        py::arg("symbol"), py::arg("lambda"), py::arg("f"), py::arg("N"), py::arg("tol") = 1e-8,
        py::arg("precondition") = false, py::arg("L") = 2);
}
