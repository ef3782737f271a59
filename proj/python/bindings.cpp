// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "connred/costmodel.hpp"
#include "connred/network.hpp"
#include "connred/serialize.hpp"
#include "connred/topology.hpp"

namespace py = pybind11;
using namespace connred;

namespace {

std::string node_repr(const Node& n) {
  return "<Node " + n.id + " " + std::string(to_string(n.role)) + " " +
         std::to_string(n.in_channels) + "->" + std::to_string(n.out_channels) + ">";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Connection topologies, network graphs and analytic costs for DenseNet-style CNNs";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  auto doc_err = py::register_exception<DocumentError>(m, "DocumentError", base.ptr());
  py::register_exception<VersionError>(m, "VersionError", doc_err.ptr());

  py::enum_<ConnectionScheme>(m, "ConnectionScheme")
      .value("DENSE", ConnectionScheme::kDense)
      .value("SHORT1", ConnectionScheme::kShort1)
      .value("SHORT2", ConnectionScheme::kShort2);
  m.def("parse_scheme", &parse_scheme, py::arg("name"));

  // std::domain_error maps to ValueError through pybind11's default translator.
  m.def(
      "predecessors",
      [](ConnectionScheme s, int n) { return predecessors(s, n).predecessors; },
      py::arg("scheme"), py::arg("n"), "1-based predecessor layers of layer n within a block");
  m.def("connection_count", &connection_count, py::arg("scheme"), py::arg("num_layers"));

  py::class_<Shape>(m, "Shape")
      .def(py::init<int, int, int>(), py::arg("channels"), py::arg("height"), py::arg("width"))
      .def_readwrite("channels", &Shape::channels)
      .def_readwrite("height", &Shape::height)
      .def_readwrite("width", &Shape::width)
      .def("__eq__", &Shape::operator==);

  py::class_<StemSpec>(m, "StemSpec")
      .def(py::init<>())
      .def_readwrite("kernel", &StemSpec::kernel)
      .def_readwrite("stride", &StemSpec::stride)
      .def_readwrite("out_channels", &StemSpec::out_channels);

  py::class_<BlockConfig>(m, "BlockConfig")
      .def(py::init<int, int>(), py::arg("num_layers"), py::arg("growth_rate"))
      .def_readwrite("num_layers", &BlockConfig::num_layers)
      .def_readwrite("growth_rate", &BlockConfig::growth_rate);

  py::class_<Compression>(m, "Compression")
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("numerator"), py::arg("denominator"))
      .def_property_readonly("numerator", &Compression::numerator)
      .def_property_readonly("denominator", &Compression::denominator)
      .def_property_readonly("value", &Compression::value)
      .def("apply", &Compression::apply);

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_static("preset", &preset, py::arg("name"))
      .def_static(
          "make", &make_config, py::arg("name"), py::arg("scheme"), py::arg("layers_per_block"),
          py::arg("growth_rate") = 32)
      .def_readwrite("name", &NetworkConfig::name)
      .def_readwrite("stem", &NetworkConfig::stem)
      .def_readwrite("blocks", &NetworkConfig::blocks)
      .def_readwrite("scheme", &NetworkConfig::scheme)
      .def_readwrite("compression", &NetworkConfig::compression)
      .def_readwrite("num_classes", &NetworkConfig::num_classes)
      .def_readwrite("input_shape", &NetworkConfig::input_shape)
      .def("check", &NetworkConfig::check);
  m.def("preset_names", &preset_names);

  py::enum_<NodeRole>(m, "NodeRole")
      .value("STEM", NodeRole::kStem)
      .value("CONV", NodeRole::kConv)
      .value("TRANSITION", NodeRole::kTransition)
      .value("GLOBAL_POOL", NodeRole::kGlobalPool)
      .value("CLASSIFIER", NodeRole::kClassifier);

  py::class_<Node>(m, "Node")
      .def_readonly("id", &Node::id)
      .def_readonly("role", &Node::role)
      .def_readonly("block", &Node::block)
      .def_readonly("layer", &Node::layer)
      .def_readonly("in_channels", &Node::in_channels)
      .def_readonly("out_channels", &Node::out_channels)
      .def_readonly("out_height", &Node::out_height)
      .def_readonly("out_width", &Node::out_width)
      .def("__repr__", &node_repr);

  py::class_<NetworkGraph>(m, "NetworkGraph")
      .def_readonly("config", &NetworkGraph::config)
      .def_readonly("nodes", &NetworkGraph::nodes)
      .def_property_readonly("edges",
                             [](const NetworkGraph& g) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& e : g.edges) out.emplace_back(e.src, e.dst);
                               return out;
                             })
      .def(
          "node", [](const NetworkGraph& g, const std::string& id) -> const Node& {
            const Node* n = g.find(id);
            if (!n) throw py::key_error(id);
            return *n;
          },
          py::return_value_policy::reference_internal)
      .def("inputs_of",
           [](const NetworkGraph& g, const std::string& id) {
             std::vector<std::string> out;
             for (const Node* n : g.inputs_of(id)) out.push_back(n->id);
             return out;
           })
      .def("__eq__", &NetworkGraph::operator==);

  m.def("build_network", &build_network, py::arg("config"));
  m.def("propagate_shapes", &propagate_shapes, py::arg("graph"), py::arg("input_shape"));
  m.def("build_annotated", &build_annotated, py::arg("config"));
  m.def(
      "validate",
      [](const NetworkGraph& g) {
        std::vector<std::string> out;
        for (const auto& v : validate(g)) out.push_back(v.message);
        return out;
      },
      py::arg("graph"), "Violation messages; empty when the graph is well formed");

  py::class_<CostConvention>(m, "CostConvention")
      .def(py::init<>())
      .def_readwrite("bytes_per_element", &CostConvention::bytes_per_element)
      .def_readwrite("madd_per_mac", &CostConvention::madd_per_mac)
      .def_readwrite("bn_params_per_channel", &CostConvention::bn_params_per_channel);

  py::class_<ConvCost>(m, "ConvCost")
      .def_readonly("weight_params", &ConvCost::weight_params)
      .def_readonly("bn_params", &ConvCost::bn_params)
      .def_readonly("macs", &ConvCost::macs)
      .def_readonly("madd", &ConvCost::madd)
      .def_property_readonly("params", &ConvCost::params);
  m.def("conv_cost", &conv_cost, py::arg("in_c"), py::arg("out_c"), py::arg("kh"), py::arg("kw"),
        py::arg("out_h"), py::arg("out_w"), py::arg("convention") = CostConvention{});

  py::class_<LayerCost>(m, "LayerCost")
      .def_readonly("node_id", &LayerCost::node_id)
      .def_readonly("params", &LayerCost::params)
      .def_readonly("macs", &LayerCost::macs)
      .def_readonly("madd", &LayerCost::madd)
      .def_readonly("act_out_bytes", &LayerCost::act_out_bytes)
      .def_readonly("read_bytes", &LayerCost::read_bytes)
      .def_readonly("write_bytes", &LayerCost::write_bytes);

  py::class_<CostTotals>(m, "CostTotals")
      .def_readonly("params", &CostTotals::params)
      .def_readonly("macs", &CostTotals::macs)
      .def_readonly("madd", &CostTotals::madd)
      .def_readonly("memory_bytes", &CostTotals::memory_bytes)
      .def_readonly("read_bytes", &CostTotals::read_bytes)
      .def_readonly("write_bytes", &CostTotals::write_bytes)
      .def_property_readonly("memrw_bytes", &CostTotals::memrw_bytes)
      .def_property_readonly("memory_mib", &CostTotals::memory_mib)
      .def_property_readonly("memrw_mib", &CostTotals::memrw_mib);

  py::class_<CostReport>(m, "CostReport")
      .def_readonly("model", &CostReport::model)
      .def_readonly("convention", &CostReport::convention)
      .def_readonly("layers", &CostReport::layers)
      .def_readonly("totals", &CostReport::totals);

  m.def("network_cost", &network_cost, py::arg("graph"),
        py::arg("convention") = CostConvention{});
  m.def(
      "compare",
      [](const std::vector<CostReport>& reports, const std::string& format) {
        return compare(reports).render(parse_table_format(format));
      },
      py::arg("reports"), py::arg("format") = "text",
      "Render a comparison table as text, csv or markdown");

  m.def("export_json", &export_json, py::arg("graph"));
  m.def("import_json", [](const std::string& s) { return import_json(s); }, py::arg("text"));
  m.def("export_dot", &export_dot, py::arg("graph"));
  m.def("export_config_json", &export_config_json, py::arg("config"));
  m.def(
      "import_config_json", [](const std::string& s) { return import_config_json(s); },
      py::arg("text"));
}
