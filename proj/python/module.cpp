#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "handmenu/bench.hpp"
#include "handmenu/blob.hpp"
#include "handmenu/config.hpp"
#include "handmenu/control.hpp"
#include "handmenu/error.hpp"
#include "handmenu/framesource.hpp"
#include "handmenu/menu.hpp"
#include "handmenu/pipeline.hpp"
#include "handmenu/pixelops.hpp"

namespace py = pybind11;
namespace hm = handmenu;

namespace {

using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

hm::Frame frame_from_array(const ByteArray& a, std::int64_t timestamp_ms) {
  if (a.ndim() != 3 || a.shape(2) != 3) throw py::value_error("expected an (height, width, 3) uint8 array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  std::vector<std::uint8_t> px(a.data(), a.data() + a.size());
  return hm::Frame(w, h, std::move(px), timestamp_ms);
}

py::array_t<std::uint8_t> frame_to_array(const hm::Frame& f) {
  py::array_t<std::uint8_t> out({f.height(), f.width(), 3});
  std::memcpy(out.mutable_data(), f.pixels().data(), f.pixels().size());
  return out;
}

hm::BinaryMask mask_from_array(const py::array_t<bool, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D boolean array");
  std::vector<std::uint8_t> bits(a.data(), a.data() + a.size());
  return hm::BinaryMask(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), std::move(bits));
}

py::array_t<bool> mask_to_array(const hm::BinaryMask& m) {
  py::array_t<bool> out({m.height(), m.width()});
  auto* dst = out.mutable_data();
  for (std::size_t i = 0; i < m.bits().size(); ++i) dst[i] = m.bits()[i] != 0;
  return out;
}

hm::PlayerAction parse_action(const std::string& name) {
  const auto a = hm::action_from_name(name);
  if (!a) throw py::value_error("unknown action '" + name + "'");
  return *a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gesture-driven virtual menu: pixel kernels, blob labeling, menu and pipeline bindings";

  py::register_exception<hm::FormatError>(m, "FormatError");
  py::register_exception<hm::SourceError>(m, "SourceError");
  py::register_exception<hm::ConfigError>(m, "ConfigError");
  py::register_exception<hm::TransportError>(m, "TransportError");
  py::register_exception<hm::ProtocolError>(m, "ProtocolError");

  py::class_<hm::Frame>(m, "Frame")
      .def(py::init(&frame_from_array), py::arg("pixels"), py::arg("timestamp_ms") = 0)
      .def_property_readonly("width", &hm::Frame::width)
      .def_property_readonly("height", &hm::Frame::height)
      .def_property_readonly("timestamp_ms", &hm::Frame::timestamp_ms)
      .def("to_numpy", &frame_to_array)
      .def("__eq__", [](const hm::Frame& a, const hm::Frame& b) { return a == b; });

  py::class_<hm::HsvRange>(m, "HsvRange")
      .def(py::init([](double h_lo, double h_hi, double s_lo, double s_hi, double v_lo, double v_hi) {
             hm::HsvRange r{h_lo, h_hi, s_lo, s_hi, v_lo, v_hi};
             r.validate();
             return r;
           }),
           py::arg("h_lo"), py::arg("h_hi"), py::arg("s_lo") = 0.0, py::arg("s_hi") = 1.0, py::arg("v_lo") = 0.0,
           py::arg("v_hi") = 1.0)
      .def_readonly("h_lo", &hm::HsvRange::h_lo)
      .def_readonly("h_hi", &hm::HsvRange::h_hi)
      .def_readonly("s_lo", &hm::HsvRange::s_lo)
      .def_readonly("s_hi", &hm::HsvRange::s_hi)
      .def_readonly("v_lo", &hm::HsvRange::v_lo)
      .def_readonly("v_hi", &hm::HsvRange::v_hi)
      .def_property_readonly("wraps", &hm::HsvRange::wraps);

  m.def("box_blur", &hm::box_blur, py::arg("frame"), py::arg("radius") = 1);
  m.def(
      "rgb_to_hsv",
      [](int r, int g, int b) {
        for (int c : {r, g, b}) {
          if (c < 0 || c > 255) throw py::value_error("channels must lie in [0, 255]");
        }
        const auto p = hm::rgb_to_hsv(static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                      static_cast<std::uint8_t>(b));
        return py::make_tuple(p.h, p.s, p.v);
      },
      py::arg("r"), py::arg("g"), py::arg("b"));
  m.def(
      "threshold_hsv", [](const hm::Frame& f, const hm::HsvRange& r) { return mask_to_array(hm::threshold_hsv(f, r)); },
      py::arg("frame"), py::arg("range"));

  py::class_<hm::Blob>(m, "Blob")
      .def_readonly("label", &hm::Blob::label)
      .def_readonly("area", &hm::Blob::area)
      .def_property_readonly("centroid", [](const hm::Blob& b) { return py::make_tuple(b.centroid.x, b.centroid.y); })
      .def_property_readonly("bbox", [](const hm::Blob& b) {
        return py::make_tuple(b.bbox.x_min, b.bbox.y_min, b.bbox.x_max, b.bbox.y_max);
      })
      .def("__repr__", [](const hm::Blob& b) {
        return "Blob(label=" + std::to_string(b.label) + ", area=" + std::to_string(b.area) + ")";
      });

  m.def(
      "label_components",
      [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& mask, int connectivity) {
        if (connectivity != 4 && connectivity != 8) throw py::value_error("connectivity must be 4 or 8");
        return hm::label_components(mask_from_array(mask),
                                    connectivity == 4 ? hm::Connectivity::Four : hm::Connectivity::Eight);
      },
      py::arg("mask"), py::arg("connectivity") = 8);
  m.def(
      "filter_blobs", [](const std::vector<hm::Blob>& b, std::int64_t min_area) { return hm::filter_blobs(b, min_area); },
      py::arg("blobs"), py::arg("min_area"));
  m.def(
      "largest_blob", [](const std::vector<hm::Blob>& b) { return hm::largest_blob(b); }, py::arg("blobs"));

  py::class_<hm::MenuRegion>(m, "MenuRegion")
      .def_readonly("id", &hm::MenuRegion::id)
      .def_readonly("caption", &hm::MenuRegion::caption)
      .def_property_readonly("action", [](const hm::MenuRegion& r) { return std::string(hm::action_name(r.action)); })
      .def_property_readonly("rect", [](const hm::MenuRegion& r) {
        return py::make_tuple(r.rect.x0, r.rect.y0, r.rect.x1, r.rect.y1);
      });
  py::class_<hm::MenuModel>(m, "MenuModel").def_property_readonly("regions", &hm::MenuModel::regions);
  m.def("default_menu", &hm::default_menu);
  m.def(
      "hit_test",
      [](const hm::MenuModel& menu, std::pair<double, double> point, std::optional<std::string> hovered,
         double inflate) { return hm::hit_test(menu, {point.first, point.second}, hovered, inflate); },
      py::arg("menu"), py::arg("point"), py::arg("hovered") = std::nullopt, py::arg("inflate") = 0.0);

  m.def(
      "encode_command",
      [](const std::string& action, std::uint64_t seq) { return py::bytes(hm::encode_command(parse_action(action), seq)); },
      py::arg("action"), py::arg("seq"));
  m.def(
      "decode_command",
      [](const std::string& line) {
        const auto c = hm::decode_command(line);
        return py::make_tuple(std::string(hm::action_name(c.action)), c.seq);
      },
      py::arg("line"));

  m.def(
      "synthetic_frames",
      [](const std::string& script_json) {
        auto source = hm::synthetic_source(hm::SyntheticScript::from_json(script_json));
        std::vector<hm::Frame> frames;
        while (auto f = source->next_frame()) frames.push_back(std::move(*f));
        return frames;
      },
      py::arg("script_json"), "Render every frame of a synthetic script (JSON text).");

  py::class_<hm::PipelineConfig>(m, "PipelineConfig")
      .def(py::init<>())
      .def_static("parse", &hm::PipelineConfig::parse, py::arg("text"))
      .def("to_json", [](const hm::PipelineConfig& c) { return c.to_json().dump(); });

  py::class_<hm::Pipeline>(m, "Pipeline")
      .def(py::init<hm::PipelineConfig>(), py::arg("config") = hm::PipelineConfig{})
      .def(
          "process",
          [](hm::Pipeline& p, const hm::Frame& frame) {
            auto out = p.process(frame);
            std::vector<std::string> selections;
            for (auto a : out.selections) selections.emplace_back(hm::action_name(a));
            return py::make_tuple(out.snapshot.to_json().dump(), std::move(out.overlay), selections);
          },
          py::arg("frame"),
          "Returns (snapshot_json, overlay_frame, selected_action_names).");

  m.def(
      "run_bench",
      [](std::size_t frames, int width, int height) {
        const auto report = hm::run_bench(frames, {width, height});
        py::dict out;
        for (const auto& s : report.stages) out[py::str(s.stage)] = py::make_tuple(s.p50_ms, s.p95_ms);
        return out;
      },
      py::arg("frames") = 300, py::arg("width") = 640, py::arg("height") = 480,
      "Per-stage (p50_ms, p95_ms) latencies.");
}
