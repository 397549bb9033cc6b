#include "hmorph/duality.hpp"
#include "hmorph/lemmas.hpp"
#include "hmorph/serialize.hpp"
#include "hmorph/suite.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hmorph;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string text(const Json& j) { return j.dump(); }

VerifyOptions verify_options(int samples, std::uint64_t seed, double tol, double scale, double delta) {
  VerifyOptions v;
  v.samples = samples;
  v.seed = seed;
  v.tol = tol;
  v.scale = scale;
  v.delta = delta;
  return v;
}

}  // namespace

PYBIND11_MODULE(_hmorph, m) {
  m.doc() = "Eigenfamilies and harmonic morphisms on classical matrix groups";

  py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<GroupDescriptor>(m, "Group")
      .def(py::init(&GroupDescriptor::parse), py::arg("descriptor"))
      .def_property_readonly("matrix_size", &GroupDescriptor::matrix_size)
      .def_property_readonly("is_dual", &GroupDescriptor::is_dual)
      .def_property_readonly("dimension", [](const GroupDescriptor& g) { return algebra_dimension(g); })
      .def("dual", &dual_descriptor)
      .def("__str__", &GroupDescriptor::to_string)
      .def("__repr__", [](const GroupDescriptor& g) { return "Group('" + g.to_string() + "')"; })
      .def(py::self == py::self);

  m.def("basis", [](const GroupDescriptor& g) {
    const SignedBasis b = metric_basis(g);
    return py::make_tuple(b.elements, b.signs, b.labels);
  }, py::arg("group"), "Signed orthonormal basis: (matrices, signs, labels).");
  m.def("sample_point", [](const GroupDescriptor& g, std::uint64_t seed, double scale) {
    return sample_point(g, seed, scale).matrix;
  }, py::arg("group"), py::arg("seed") = kDefaultSeed, py::arg("scale") = kDefaultSampleScale);
  m.def("membership_residual", [](const GroupDescriptor& g, const ComplexMatrix& x) {
    return membership_residual(GroupPoint{g, x});
  });

  py::class_<ScalarField>(m, "Field")
      .def_static("constant", &ScalarField::constant)
      .def_static("coordinate", [](const GroupDescriptor& g, const std::string& name, int i, int j) {
        return coordinate_field(g, name, i, j);
      }, py::arg("group"), py::arg("name"), py::arg("i"), py::arg("j"))
      .def("__call__", [](const ScalarField& f, const ComplexMatrix& g) { return evaluate(f, g); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def("__rmul__", [](const ScalarField& f, Complex c) { return c * f; })
      .def("__mul__", [](const ScalarField& f, Complex c) { return c * f; });

  m.def("tension", [](const ScalarField& f, const GroupDescriptor& g, const ComplexMatrix& x) {
    return tension(f, GroupPoint{g, x}, metric_basis(g));
  }, py::arg("field"), py::arg("group"), py::arg("point"));
  m.def("kappa", [](const ScalarField& f, const ScalarField& h, const GroupDescriptor& g, const ComplexMatrix& x) {
    return kappa(f, h, GroupPoint{g, x}, metric_basis(g));
  }, py::arg("f"), py::arg("h"), py::arg("group"), py::arg("point"));

  m.def("check_identities", [](int n, int p, int q) {
    const IdentityReport r = check_identities(n, p, q);
    py::dict out;
    for (const auto& name : r.names())
      out[py::str(name)] = py::make_tuple(r.max_float_deviation(name), r.max_exact_deviation(name));
    return out;
  }, py::arg("n"), py::arg("p"), py::arg("q"), "name -> (max float deviation, exact deviation in halves)");

  m.def("lemma_selectors", &lemma_selectors);
  m.def("family_selectors", &family_selectors);
  m.def("verify_lemma_json", [](const GroupDescriptor& g, const std::string& sel, int samples, std::uint64_t seed,
                                double tol) {
    return text(to_json(verify_lemma(g, sel, verify_options(samples, seed, tol, kDefaultSampleScale, kPoleGuard))));
  });

  // Families and morphisms travel as their JSON documents.
  m.def("make_family_json", [](const std::string& sel, const std::optional<GroupDescriptor>& g) {
    return text(to_json(make_family(g ? *g : default_group_for(sel), sel)));
  });
  m.def("verify_family_json", [](const std::string& fam, int samples, std::uint64_t seed, double tol) {
    const Family f = family_from_json(Json::parse(fam));
    return text(to_json(verify_family(f, verify_options(samples, seed, tol, kDefaultSampleScale, kPoleGuard))));
  });
  m.def("dualize_json", [](const std::string& fam) { return text(to_json(dualize(family_from_json(Json::parse(fam))))); });
  m.def("verify_dual_json", [](const std::string& fam, int samples, std::uint64_t seed, double tol) {
    const Family f = family_from_json(Json::parse(fam));
    return text(to_json(verify_dual(f, verify_options(samples, seed, tol, kDefaultSampleScale, kPoleGuard))));
  });
  m.def("example_sl2_morphism_json", [] { return text(to_json(example_sl2_morphism())); });
  m.def("random_morphism_json", [](const std::string& fam, int d1, int d2, std::uint64_t seed) {
    const Family f = family_from_json(Json::parse(fam));
    std::mt19937_64 rng(seed);
    if (const auto* e = std::get_if<EigenFamily>(&f)) {
      const int v = static_cast<int>(e->generators.size());
      auto num = random_homogeneous(v, d1, rng);
      auto den = random_homogeneous(v, d1, rng);
      return text(to_json(build_morphism(f, num, den)));
    }
    const auto& b = std::get<BiEigenFamily>(f);
    const int v1 = static_cast<int>(b.first.generators.size());
    const int v2 = static_cast<int>(b.second.generators.size());
    auto num = random_bihomogeneous(v1, v2, d1, d2, rng);
    auto den = random_bihomogeneous(v1, v2, d1, d2, rng);
    return text(to_json(build_morphism(f, num, den)));
  }, py::arg("family"), py::arg("d1"), py::arg("d2") = 0, py::arg("seed") = kDefaultSeed);
  m.def("verify_morphism_json", [](const std::string& mor, int samples, std::uint64_t seed, double tol) {
    MorphismOptions o;
    o.samples = samples;
    o.seed = seed;
    o.tol = tol;
    return text(to_json(verify_morphism(morphism_from_json(Json::parse(mor)), o)));
  });

  m.def("run_suite_json", [](std::uint64_t seed, int max_size) {
    SuiteOptions o;
    o.seed = seed;
    o.max_size = max_size;
    std::vector<CriterionResult> r;
    {
      py::gil_scoped_release release;
      r = run_suite(o);
    }
    return text(suite_to_json(r, o));
  }, py::arg("seed") = kDefaultSeed, py::arg("max_size") = 6);

  m.attr("DEFAULT_SEED") = kDefaultSeed;
  m.attr("POLE_GUARD") = kPoleGuard;
}
