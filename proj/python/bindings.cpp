// Python bindings. Reports cross the boundary as JSON text; the package's
// __init__ decodes them.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tilebound/error.hpp"
#include "tilebound/geometry.hpp"
#include "tilebound/render.hpp"
#include "tilebound/report.hpp"

namespace py = pybind11;
using namespace tilebound;

namespace {

// Python ints may exceed 64 bits, so go through their decimal form.
Int to_int(const py::handle& h) {
  if (!py::isinstance<py::int_>(h)) throw py::type_error("expected an integer, got " + std::string(py::repr(h)));
  return Int(std::string(py::str(h)));
}

IntMatrix to_matrix(const py::sequence& rows) {
  const std::size_t n = rows.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    py::sequence row = rows[i];
    if (row.size() != n) throw py::value_error("matrix must be square");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = to_int(row[j]);
  }
  return m;
}

std::vector<IntVector> to_digits(const py::sequence& digits) {
  std::vector<IntVector> out;
  for (const auto& d : digits) {
    py::sequence v = py::reinterpret_borrow<py::sequence>(d);
    std::vector<Int> c;
    for (const auto& x : v) c.push_back(to_int(x));
    out.emplace_back(std::move(c));
  }
  return out;
}

StandardPair make(const py::sequence& matrix, const py::sequence& digits) {
  return StandardPair::create(to_matrix(matrix), to_digits(digits));
}

PairSpec spec_of(const py::sequence& matrix, const py::sequence& digits) {
  PairSpec s;
  s.matrix = to_matrix(matrix);
  s.n = s.matrix.rows();
  s.digits = to_digits(digits);
  return s;
}

py::array_t<double> real_points(const StandardPair& p, unsigned k, std::size_t n, const std::vector<Coord>& coords) {
  const LevelScale scale(p.matrix(), k);
  const std::size_t count = n == 0 ? 0 : coords.size() / n;
  py::array_t<double> out({count, n});
  auto a = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < count; ++i) {
    const auto x = scale.to_real({coords.data() + i * n, n});
    for (std::size_t c = 0; c < n; ++c) a(i, c) = static_cast<double>(x[c]);
  }
  return out;
}

GeometryOptions options(std::uint64_t budget, unsigned threads) {
  GeometryOptions o;
  o.budget = budget;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_tilebound, m) {
  m.doc() = "Boundary dimension of self-affine tiles";

  auto base = py::register_exception<Error>(m, "TileboundError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<InternalError>(m, "InternalError", base.ptr());

  m.def("read_spec", [](const std::string& path) {
    const PairSpec s = read_spec(path);
    return py::make_tuple(py::module_::import("json").attr("loads")(dump(matrix_json(s.matrix))),
                          py::module_::import("json").attr("loads")(dump([&] {
                            Json a = Json::array();
                            for (const auto& d : s.digits) a.push_back(vector_json(d));
                            return a;
                          }())));
  });

  m.def("validate_json", [](const py::sequence& matrix, const py::sequence& digits) {
    return dump(validation_json(validate(to_matrix(matrix), to_digits(digits), true)));
  });

  m.def("analyze_json", [](const py::sequence& matrix, const py::sequence& digits, bool with_dimension, double tol) {
    const PairSpec s = spec_of(matrix, digits);
    SpectrumOptions o;
    o.interval_tol = tol;
    return dump(analysis_json(s, analyze(make_pair(s), o), with_dimension));
  }, py::arg("matrix"), py::arg("digits"), py::arg("with_dimension") = true, py::arg("tol") = 1e-9);

  m.def("primitivize_json", [](const py::sequence& matrix, const py::sequence& digits) {
    return dump(primitivization_json(primitivize(to_matrix(matrix), to_digits(digits))));
  });

  m.def("gamma_points", [](const py::sequence& matrix, const py::sequence& digits, unsigned k, std::uint64_t budget) {
    const StandardPair p = make(matrix, digits);
    ScaledPointSet g;
    {
      py::gil_scoped_release nogil;
      g = gamma_k(p, k, options(budget, 0));
    }
    return real_points(p, k, g.n, g.coords);
  }, py::arg("matrix"), py::arg("digits"), py::arg("k"), py::arg("budget") = 100000000);

  m.def("boundary_points",
        [](const py::sequence& matrix, const py::sequence& digits, unsigned k, std::uint64_t budget, unsigned threads) {
          const StandardPair p = make(matrix, digits);
          BoundaryPointSet d;
          {
            py::gil_scoped_release nogil;
            d = delta_k(p, compute_S(p), k, options(budget, threads));
          }
          return real_points(p, k, d.n, d.coords);
        },
        py::arg("matrix"), py::arg("digits"), py::arg("k"), py::arg("budget") = 100000000, py::arg("threads") = 0);

  m.def("growth_json",
        [](const py::sequence& matrix, const py::sequence& digits, unsigned k_min, unsigned k_max,
           std::optional<std::vector<double>> ball, std::uint64_t budget) {
          const StandardPair p = make(matrix, digits);
          std::optional<Ball> b;
          if (ball) {
            if (ball->size() != p.dim() + 1) throw py::value_error("ball needs n center coordinates and a radius");
            b = Ball{std::vector<long double>(ball->begin(), ball->end() - 1), ball->back()};
          }
          GrowthEstimate est;
          {
            py::gil_scoped_release nogil;
            est = growth_rate_estimate(p, compute_S(p), k_min, k_max, b, options(budget, 0));
          }
          return dump(growth_json(est, b));
        },
        py::arg("matrix"), py::arg("digits"), py::arg("k_min"), py::arg("k_max"), py::arg("ball") = py::none(),
        py::arg("budget") = 100000000);

  m.def("box_count_json", [](const py::sequence& matrix, const py::sequence& digits, unsigned k, std::uint64_t budget) {
    const StandardPair p = make(matrix, digits);
    BoundaryPointSet d;
    BoxCountEstimate est;
    {
      py::gil_scoped_release nogil;
      d = delta_k(p, compute_S(p), k, options(budget, 0));
      est = box_counting_estimate(d, p);
    }
    return dump(box_count_json(est, k, d.size()));
  }, py::arg("matrix"), py::arg("digits"), py::arg("k"), py::arg("budget") = 100000000);

  m.def("render", [](const py::sequence& matrix, const py::sequence& digits, unsigned k, const std::string& path,
                     int width, int height) {
    const StandardPair p = make(matrix, digits);
    const auto g = gamma_k(p, k);
    RasterImage img = rasterize(g, p, width, height, 0.05);
    overlay(img, delta_k(p, compute_S(p), g), p);
    write_pnm(img, path);
  }, py::arg("matrix"), py::arg("digits"), py::arg("k"), py::arg("path"), py::arg("width") = 800,
        py::arg("height") = 800);
}
