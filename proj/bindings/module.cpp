#include "fracheat/errors.hpp"
#include "fracheat/gramian.hpp"
#include "fracheat/grid.hpp"
#include "fracheat/probe.hpp"
#include "fracheat/svc.hpp"
#include "fracheat/thickness.hpp"

#include "commands.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

namespace py = pybind11;
using namespace fracheat;

namespace {

Rational rat(const std::string& s) { return rational_from_string(s); }

IntervalUnion union_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs)
{
    std::vector<Interval> ivs;
    ivs.reserve(pairs.size());
    for (const auto& [a, b] : pairs) ivs.push_back({rat(a), rat(b)});
    return IntervalUnion(std::move(ivs));
}

py::dict thickness_sample_dict(const ThicknessSample& s)
{
    py::dict d;
    d["L"] = rational_to_string(s.L);
    d["theta"] = rational_to_string(s.theta);
    d["argmin_x"] = rational_to_string(s.argmin_x);
    d["L_float"] = to_double(s.L);
    d["theta_float"] = to_double(s.theta);
    return d;
}

SvcParams svc_from_kwargs(const py::kwargs& kw)
{
    if (kw.contains("ratios")) {
        std::vector<Rational> rs;
        for (const auto& item : kw["ratios"].cast<std::vector<std::string>>()) rs.push_back(rat(item));
        return SvcParams::explicit_ratios(std::move(rs));
    }
    unsigned pb = kw.contains("precision_bits") ? kw["precision_bits"].cast<unsigned>() : 128u;
    return SvcParams::parametric(rat(kw["c"].cast<std::string>()), rat(kw["C"].cast<std::string>()),
                                 rat(kw["alpha"].cast<std::string>()), pb);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "exact fat-Cantor thickness profiles and fractional-heat observability experiments";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<IntervalUnion>(m, "IntervalUnion")
        .def(py::init(&union_from_pairs), py::arg("intervals"),
             "build from [(a, b), ...] with rational endpoint literals like '3/4'")
        .def("__len__", &IntervalUnion::size)
        .def("measure", [](const IntervalUnion& u) { return rational_to_string(u.measure()); })
        .def("measure_float", [](const IntervalUnion& u) { return to_double(u.measure()); })
        .def("intervals",
             [](const IntervalUnion& u) {
                 std::vector<std::pair<std::string, std::string>> out;
                 for (const auto& iv : u.intervals())
                     out.emplace_back(rational_to_string(iv.a), rational_to_string(iv.b));
                 return out;
             })
        .def("complement_within",
             [](const IntervalUnion& u, const std::string& a, const std::string& b) {
                 return u.complement_within({rat(a), rat(b)});
             })
        .def("translate",
             [](const IntervalUnion& u, const std::string& t) { return u.translate(rat(t)); })
        .def("to_json", [](const IntervalUnion& u) { return u.to_json().dump(); })
        .def_static("from_json", [](const std::string& text) {
            return IntervalUnion::from_json(nlohmann::json::parse(text));
        });

    py::class_<SvcParams>(m, "SvcParams")
        .def(py::init(&svc_from_kwargs),
             "SvcParams(ratios=[...]) or SvcParams(c='1/2', C='1', alpha='1/2', precision_bits=128)")
        .def("ratio", [](const SvcParams& p, unsigned n) { return rational_to_string(p.ratio(n)); });

    m.def("svc_construct", &svc_construct, py::arg("params"), py::arg("depth"),
          py::arg("max_total_bits") = (std::uint64_t{1} << 33));

    m.def("min_local_measure", [](const IntervalUnion& K, const std::string& L) {
        auto r = min_local_measure(K, rat(L));
        py::dict d;
        d["theta"] = rational_to_string(r.theta);
        d["theta_float"] = to_double(r.theta);
        d["argmin_x"] = rational_to_string(r.argmin_x);
        return d;
    });

    m.def("svc_min_local_measure",
          [](const SvcParams& params, unsigned depth, const std::string& L) {
              auto r = svc_min_local_measure(params, depth, rat(L));
              py::dict d;
              d["theta"] = rational_to_string(r.theta);
              d["theta_float"] = to_double(r.theta);
              d["argmin_x"] = rational_to_string(r.argmin_x);
              return d;
          });

    m.def("thickness_profile", [](const IntervalUnion& K, const std::vector<std::string>& Ls) {
        std::vector<Rational> scales;
        for (const auto& L : Ls) scales.push_back(rat(L));
        auto profile = thickness_profile(K, std::move(scales));
        py::list out;
        for (const auto& s : profile.samples) out.append(thickness_sample_dict(s));
        return out;
    });

    m.def("fit_alpha_points", [](const std::vector<std::pair<double, double>>& pts) {
        auto fit = fit_alpha_points(pts);
        py::dict d;
        d["alpha_hat"] = fit.alpha_hat;
        d["c_hat"] = fit.c_hat;
        d["C_hat"] = fit.C_hat;
        d["r2"] = fit.r2;
        return d;
    });

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](double X, int N) {
                 GridSpec g{X, N};
                 g.validate();
                 return g;
             }),
             py::arg("X"), py::arg("N"))
        .def_readonly("X", &GridSpec::X)
        .def_readonly("N", &GridSpec::N);

    m.def("evolve",
          [](const GridSpec& grid, const std::vector<std::complex<double>>& values, double t,
             double s) { return GridField::from_values(grid, values).evolved(t, s).values(); },
          py::arg("grid"), py::arg("values"), py::arg("t"), py::arg("s"),
          "fractional heat flow exp(-t |xi|^s) applied through the grid's Fourier basis");

    m.def("band_project", [](const GridSpec& grid, const std::vector<std::complex<double>>& values,
                             double lam) {
        return GridField::from_values(grid, values).band_projected(lam).values();
    });

    m.def("restrict_mass", [](const IntervalUnion& omega, const GridSpec& grid,
                              const std::vector<std::complex<double>>& values) {
        return restrict_mass(omega, GridField::from_values(grid, values));
    });

    m.def("spectral_constant_d", [](const IntervalUnion& omega, double lam, const GridSpec& grid) {
        return spectral_constant_d(omega, lam, grid);
    });

    m.def("spectral_sweep", [](const IntervalUnion& omega, const std::vector<double>& lambdas,
                               const GridSpec& grid) { return spectral_sweep(omega, lambdas, grid); });

    m.def("fit_spectral_growth", [](const std::vector<std::pair<double, double>>& pairs) {
        auto fit = fit_spectral_growth(pairs);
        return py::make_tuple(fit.exponent, fit.r2);
    });

    m.def("observability_constant", &observability_constant, py::arg("omega"), py::arg("T"),
          py::arg("s"), py::arg("lambda_max"), py::arg("grid"), py::arg("quad_nodes") = 32);

    m.def("predicted_cobs",
          [](double d0, double d1, double zeta, double c1, double c2, double c3, double T) {
              LRConstants lr;
              lr.d0 = d0;
              lr.d1 = d1;
              lr.zeta = zeta;
              lr.c1 = c1;
              lr.c2 = c2;
              lr.c3 = c3;
              return predicted_cobs(lr, T);
          },
          py::arg("d0"), py::arg("d1"), py::arg("zeta"), py::arg("c1") = 1.0, py::arg("c2") = 1.0,
          py::arg("c3") = 1.0, py::arg("T") = 1.0);

    m.def("calibrate_lr_constants",
          [](const IntervalUnion& omega, double s, double alpha, const std::vector<double>& lamA,
             const GridSpec& grid) {
              auto lr = calibrate_lr_constants(omega, s, alpha, lamA, grid);
              py::dict d;
              d["d0"] = lr.d0;
              d["d1"] = lr.d1;
              d["zeta"] = lr.zeta;
              d["fit_r2"] = lr.fit_r2;
              return d;
          });

    m.def("eval_g",
          [](double s, double xi0, double w, double p, double h, double t, double x,
             int quad_points) {
              ProbeParams params;
              params.s = s;
              params.xi0 = xi0;
              params.chi.w = w;
              params.chi.p = p;
              params.h = h;
              params.quad_points = quad_points;
              auto r = eval_g(params, t, x);
              return py::make_tuple(r.value, r.err);
          },
          py::arg("s"), py::arg("xi0"), py::arg("w"), py::arg("p"), py::arg("h"), py::arg("t"),
          py::arg("x"), py::arg("quad_points") = 512,
          "coherent-state value g_h(t, x) with its quadrature error estimate");

    m.def("run_config",
          [](const std::string& config_json) {
              return cli::run_config(nlohmann::json::parse(config_json));
          },
          "run a full experiment config (same schema as the CLI); returns the written files");

#ifdef FRACHEAT_VERSION
    m.attr("__version__") = FRACHEAT_VERSION;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
