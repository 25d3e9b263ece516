#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "streambench/baselines.hpp"
#include "streambench/bench.hpp"
#include "streambench/eval.hpp"
#include "streambench/features.hpp"
#include "streambench/generators.hpp"
#include "streambench/hoeffding_tree.hpp"
#include "streambench/mondrian.hpp"

namespace py = pybind11;
using namespace streambench;

namespace {

std::map<std::string, std::string> to_param_map(const py::dict& params) {
    std::map<std::string, std::string> out;
    for (const auto& item : params)
        out[py::str(item.first).cast<std::string>()] = py::str(item.second).cast<std::string>();
    return out;
}

RunReport run_prequential(Classifier& classifier, const std::vector<Instance>& stream,
                          int report_every) {
    VectorSource source(stream, classifier.spec());
    return prequential_run(classifier, source, report_every);
}

double macro_f1_pairs(const std::vector<Label>& predicted, const std::vector<Label>& truth,
                      int num_classes) {
    if (predicted.size() != truth.size())
        throw UsageError("predicted/truth length mismatch");
    ConfusionState state(num_classes);
    for (std::size_t i = 0; i < predicted.size(); ++i) state.record(predicted[i], truth[i]);
    const auto f1 = state.macro_f1();
    if (!f1) throw UsageError("macro_f1 undefined before any element");
    return *f1;
}

}  // namespace

PYBIND11_MODULE(_streambench, m) {
    m.doc() = "Memory-constrained data-stream classifiers and a prequential benchmark harness";

    py::register_exception<ConfigError>(m, "StreamConfigError", PyExc_ValueError);
    py::register_exception<UsageError>(m, "StreamUsageError", PyExc_ValueError);
    py::register_exception<DataError>(m, "StreamDataError", PyExc_ValueError);

    py::class_<Instance>(m, "Instance")
        .def(py::init([](std::vector<double> features, std::optional<Label> label) {
                 return Instance(std::move(features), label);
             }),
             py::arg("features"), py::arg("label") = std::nullopt)
        .def_readwrite("features", &Instance::features)
        .def_readwrite("label", &Instance::label)
        .def("__repr__", [](const Instance& x) {
            return "Instance(dim=" + std::to_string(x.features.size()) + ", label=" +
                   (x.label ? std::to_string(*x.label) : std::string("None")) + ")";
        });

    py::class_<StreamSpec>(m, "StreamSpec")
        .def(py::init([](int dimensionality, int num_classes, std::int64_t length) {
                 StreamSpec s{dimensionality, num_classes, length};
                 s.validate();
                 return s;
             }),
             py::arg("dimensionality"), py::arg("num_classes"), py::arg("length") = 0)
        .def_readonly("dimensionality", &StreamSpec::dimensionality)
        .def_readonly("num_classes", &StreamSpec::num_classes)
        .def_readonly("length", &StreamSpec::length);

    py::class_<Classifier>(m, "Classifier")
        .def("predict", &Classifier::predict, py::arg("instance"))
        .def("train", &Classifier::train, py::arg("instance"))
        .def("memory_bytes", &Classifier::memory_bytes)
        .def_property_readonly("spec", &Classifier::spec);

    py::class_<TimelinePoint>(m, "TimelinePoint")
        .def_readonly("elements", &TimelinePoint::elements)
        .def_readonly("macro_f1", &TimelinePoint::macro_f1)
        .def_readonly("memory_bytes", &TimelinePoint::memory_bytes);

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("classifier", &RunReport::classifier)
        .def_readonly("dataset", &RunReport::dataset)
        .def_readonly("seed", &RunReport::seed)
        .def_readonly("timeline", &RunReport::timeline)
        .def_readonly("final_macro_f1", &RunReport::final_macro_f1)
        .def_readonly("runtime_seconds", &RunReport::runtime_seconds)
        .def_readonly("peak_memory_bytes", &RunReport::peak_memory_bytes)
        .def_readonly("elements", &RunReport::elements);

    m.def(
        "make_classifier",
        [](const std::string& name, const py::dict& params, const StreamSpec& spec,
           std::uint64_t seed) {
            return make_classifier({name, to_param_map(params)}, spec, seed);
        },
        py::arg("name"), py::arg("params"), py::arg("spec"), py::arg("seed") = 42,
        "Build a stream classifier from its CLI identifier (nb, ht, mf, "
        "mcnn-origin, mcnn-orpaillecc, fnn, empty).");

    m.def(
        "generate",
        [](const std::string& dataset_spec) {
            const DatasetSpec spec = parse_dataset_spec(dataset_spec);
            if (!spec.synthetic) throw UsageError("generate needs a synth: dataset spec");
            return generate(spec.generator);
        },
        py::arg("dataset_spec"),
        "Materialize a synthetic stream, e.g. generate('synth:hyperplane,seed=1,n=1000').");

    m.def(
        "dataset_spec",
        [](const std::string& dataset_spec) {
            const DatasetSpec spec = parse_dataset_spec(dataset_spec);
            if (!spec.synthetic) throw UsageError("dataset_spec needs a synth: dataset spec");
            return spec.generator.stream_spec();
        },
        py::arg("dataset_spec"), "Stream shape (dimensionality/classes/length) of a synth: id.");

    m.def("prequential_run", &run_prequential, py::arg("classifier"), py::arg("stream"),
          py::arg("report_every") = 50,
          "Test-then-train pass; returns the timeline and final macro-F1.");

    m.def("macro_f1", &macro_f1_pairs, py::arg("predicted"), py::arg("truth"),
          py::arg("num_classes"), "Macro-averaged F1 over encountered classes.");

    m.def("hoeffding_bound", &hoeffding_bound, py::arg("range"), py::arg("delta"), py::arg("n"));

    m.def(
        "inject_drift",
        [](std::vector<Instance> stream, std::int64_t position, int shift, int num_classes) {
            return inject_drift(std::move(stream), DriftConfig{position, shift}, num_classes);
        },
        py::arg("stream"), py::arg("position"), py::arg("shift"), py::arg("num_classes"));

    m.def(
        "shuffle_stream",
        [](std::vector<Instance> stream, std::uint64_t seed) {
            return shuffle_stream(std::move(stream), seed);
        },
        py::arg("stream"), py::arg("seed"));

    m.def(
        "meanstd_features",
        [](const std::vector<std::vector<double>>& samples) {
            if (samples.empty()) throw UsageError("meanstd_features on an empty window");
            SampleWindow w;
            w.axes = static_cast<int>(samples.front().size());
            for (const auto& row : samples) {
                if (static_cast<int>(row.size()) != w.axes)
                    throw UsageError("ragged sample window");
                w.samples.insert(w.samples.end(), row.begin(), row.end());
                w.labels.push_back(0);
            }
            return meanstd_features(w).features;
        },
        py::arg("samples"), "Per-axis mean and population std of a row-major window.");

    m.attr("__version__") = "1.0.0";
}
