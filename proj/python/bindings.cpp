#include "svtan/classify.hpp"
#include "svtan/report.hpp"
#include "svtan/toric_ideal.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace svtan;

namespace {

std::vector<std::int64_t> point_of(const LatticeVector& v) { return v.to_int64(); }

}  // namespace

PYBIND11_MODULE(_svtan, m) {
    m.doc() = "Exact classification of tangential varieties of Segre-Veronese varieties";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    m.def(
        "classify_json",
        [](std::vector<int> a, std::vector<int> b, std::optional<std::int64_t> window,
           std::optional<std::int64_t> bound, std::size_t subset_cap, bool full_evidence) {
            ClassifyOptions opts;
            opts.window = window;
            opts.bound = bound;
            opts.subset_cap = subset_cap;
            opts.full_evidence = full_evidence;
            ClassificationReport r;
            {
                py::gil_scoped_release release;
                r = classify(SVParams(std::move(a), std::move(b)), opts);
            }
            return report_to_json(r, -1);
        },
        py::arg("a"), py::arg("b"), py::arg("window") = py::none(), py::arg("bound") = py::none(),
        py::arg("subset_cap") = 14, py::arg("full_evidence") = false);

    m.def(
        "sweep_json",
        [](int max_k, int max_a, int max_b, unsigned threads) {
            SweepResult res;
            {
                py::gil_scoped_release release;
                res = sweep(sweep_params(max_k, max_a, max_b), {}, threads);
            }
            return sweep_to_json(res, -1);
        },
        py::arg("max_k"), py::arg("max_a"), py::arg("max_b"), py::arg("threads") = 0);

    m.def("examples_json", [] { return examples_to_json(run_paper_examples(), -1); });

    m.def("expected_clause", [](std::vector<int> a, std::vector<int> b) {
        return expected_verdicts(SVParams(std::move(a), std::move(b))).clause();
    });

    m.def("facets", [](std::vector<int> a, std::vector<int> b) {
        AffineSemigroup s(SVParams(std::move(a), std::move(b)));
        std::vector<std::string> out;
        for (const auto& f : s.facets()) out.push_back(f.to_string());
        return out;
    });

    m.def("generators", [](std::vector<int> a, std::vector<int> b) {
        AffineSemigroup s(SVParams(std::move(a), std::move(b)));
        std::vector<std::vector<std::int64_t>> out;
        for (const auto& g : s.generators()) out.push_back(point_of(g));
        return out;
    });

    m.def("semigroup_member", [](std::vector<int> a, std::vector<int> b, const std::vector<std::int64_t>& x) {
        AffineSemigroup s(SVParams(std::move(a), std::move(b)));
        return semigroup_member(s, LatticeVector::from_int64(x));
    });

    m.def("group_member", [](std::vector<int> a, std::vector<int> b, const std::vector<std::int64_t>& x) {
        AffineSemigroup s(SVParams(std::move(a), std::move(b)));
        if (static_cast<int>(x.size()) != s.n()) throw std::invalid_argument("point has the wrong dimension");
        return s.in_group(x);
    });

    m.def(
        "relations",
        [](const std::string& complex_text, int max_degree) {
            const auto c = parse_complex(complex_text);
            std::vector<std::string> out;
            for (const auto& r : enumerate_binomials(c, max_degree)) out.push_back(format_relation(c, r));
            return out;
        },
        py::arg("complex_text"), py::arg("max_degree"));

    m.def("verify_relation", [](const std::string& complex_text, const std::string& relation) {
        const auto c = parse_complex(complex_text);
        return verify_relation(c, parse_relation(c, relation));
    });
}
