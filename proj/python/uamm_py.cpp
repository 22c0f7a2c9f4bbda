#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <sstream>

#include "uamm/bd_rate.hpp"
#include "uamm/cli.hpp"
#include "uamm/config.hpp"
#include "uamm/experiment.hpp"
#include "uamm/kinematics.hpp"
#include "uamm/metrics.hpp"
#include "uamm/motion_field.hpp"
#include "uamm/predictor.hpp"
#include "uamm/sequences.hpp"

namespace py = pybind11;
using namespace uamm;

namespace {

using Array = py::array_t<uint8_t, py::array::c_style | py::array::forcecast>;

Array toArray(const Plane& p)
{
  Array a({ p.height(), p.width() });
  std::memcpy(a.mutable_data(), p.samples().data(), p.samples().size());
  return a;
}

Plane toPlane(const Array& a)
{
  if (a.ndim() != 2)
  {
    throw Error("expected a 2-D uint8 array");
  }
  Plane p(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  std::memcpy(p.samples().data(), a.data(), p.samples().size());
  return p;
}

FrameBuffer makeFrame(const Array& luma, int poc)
{
  FrameBuffer f;
  f.poc  = poc;
  f.luma = toPlane(luma);
  return f;
}

template<typename T>
std::vector<std::vector<T>> gridRows(const Grid<T>& g)
{
  std::vector<std::vector<T>> rows(static_cast<size_t>(g.height()));
  for (int y = 0; y < g.height(); y++)
  {
    for (int x = 0; x < g.width(); x++)
    {
      rows[static_cast<size_t>(y)].push_back(g(x, y));
    }
  }
  return rows;
}

Grid<MotionVector> gridFromRows(const std::vector<std::vector<MotionVector>>& rows)
{
  const int h = static_cast<int>(rows.size());
  const int w = h ? static_cast<int>(rows[0].size()) : 0;
  Grid<MotionVector> g(w, h);
  for (int y = 0; y < h; y++)
  {
    if (static_cast<int>(rows[static_cast<size_t>(y)].size()) != w)
    {
      throw Error("ragged MV grid");
    }
    for (int x = 0; x < w; x++)
    {
      g(x, y) = rows[static_cast<size_t>(y)][static_cast<size_t>(x)];
    }
  }
  return g;
}

py::dict resultToDict(const PredictionResult& r)
{
  py::dict d;
  d["mode"]            = std::string(toString(r.mode));
  d["initial_mv"]      = r.initialMv;
  d["subblock_mvs"]    = gridRows(r.subblockMvs);
  d["pred"]            = toArray(r.pred);
  d["sad"]             = r.sad;
  d["corrected_count"] = r.correctedCount;
  return d;
}

} // namespace

PYBIND11_MODULE(_uamm, m)
{
  m.doc() = "Uniformly accelerated motion model for block-based inter prediction";

  py::register_exception<Error>(m, "UammError");
  py::register_exception<OverflowError>(m, "UammOverflowError", PyExc_OverflowError);

  m.attr("PREC")    = kPrec;
  m.attr("MV_MAX")  = kMvMax;

  py::class_<MotionVector>(m, "MotionVector")
    .def(py::init<int32_t, int32_t>(), py::arg("x") = 0, py::arg("y") = 0)
    .def_readwrite("x", &MotionVector::x)
    .def_readwrite("y", &MotionVector::y)
    .def("__eq__", [](const MotionVector& a, const MotionVector& b) { return a == b; })
    .def("__iter__", [](const MotionVector& v) { return py::iter(py::make_tuple(v.x, v.y)); })
    .def("__repr__", [](const MotionVector& v) { return "MotionVector" + v.toString(); });

  py::enum_<ModelKind>(m, "ModelKind")
    .value("Accelerated", ModelKind::Accelerated)
    .value("Linear", ModelKind::Linear)
    .value("Constant", ModelKind::Constant)
    .value("Unavailable", ModelKind::Unavailable);

  py::class_<UammParams>(m, "UammParams")
    .def(py::init(&UammParams::fromScaled), py::arg("v0x"), py::arg("v0y"), py::arg("ax"), py::arg("ay"))
    .def_static("unavailable", &UammParams::unavailable)
    .def_readonly("v0x", &UammParams::v0x)
    .def_readonly("v0y", &UammParams::v0y)
    .def_readonly("ax", &UammParams::ax)
    .def_readonly("ay", &UammParams::ay)
    .def_readonly("kind", &UammParams::kind)
    .def("__eq__", [](const UammParams& a, const UammParams& b) { return a == b; })
    .def("__repr__", [](const UammParams& p) {
      std::ostringstream os;
      os << "UammParams(" << toString(p.kind) << ", v0=(" << p.v0x << "," << p.v0y << "), a=(" << p.ax << ","
         << p.ay << "))";
      return os.str();
    });

  m.def("displacement", [](const UammParams& p, int64_t t) { return displacement(p, TimeInterval(t)); });
  m.def("velocity_at", [](const UammParams& p, int64_t t) {
    const ScaledVelocity v = velocityAt(p, TimeInterval(t));
    return py::make_tuple(v.x, v.y);
  });
  m.def("derive_params", [](MotionVector mv0, MotionVector mv1, int64_t t0, int64_t t1) {
    return deriveParams(mv0, mv1, TimeInterval(t0), TimeInterval(t1));
  });
  m.def("extrapolate_mv", [](const UammParams& p, int64_t t0, int64_t t1, int64_t t2) {
    return extrapolateMv(p, TimeInterval(t0), TimeInterval(t1), TimeInterval(t2));
  });
  m.def("tmvp_scale", [](MotionVector mv, int64_t curr, int64_t col) {
    return tmvpScale(mv, TimeInterval(curr), TimeInterval(col));
  });

  py::class_<MotionField>(m, "MotionField")
    .def(py::init(&MotionField::forPicture), py::arg("poc"), py::arg("width"), py::arg("height"))
    .def_property_readonly("poc", &MotionField::poc)
    .def_property_readonly("width_units", &MotionField::widthUnits)
    .def_property_readonly("height_units", &MotionField::heightUnits)
    .def("set_inter",
         [](MotionField& f, int cx, int cy, MotionVector mv, int64_t dist) {
           f.setInter(cx, cy, mv, TimeInterval(dist));
         })
    .def("set_intra", &MotionField::setIntra)
    .def("params", [](const MotionField& f, int cx, int cy) { return f.cell(cx, cy).params; })
    .def("mv", [](const MotionField& f, int cx, int cy) { return f.cell(cx, cy).mv; })
    .def("to_csv", [](const MotionField& f) {
      std::ostringstream os;
      writeFieldCsv(os, f);
      return os.str();
    });

  m.def("derive_field_params", &deriveFieldParams, py::arg("curr"), py::arg("prev"));
  m.def("inherit_params", [](const MotionField& f, int x, int y, int w, int h, MotionVector mvC) {
    return gridRows(inheritParams(f, { x, y, w, h }, mvC));
  });

  m.def("full_search_me", [](const Array& src, const Array& ref, int x, int y, int w, int h, int range) {
    return fullSearchMe(toPlane(src), toPlane(ref), { x, y, w, h }, range);
  });
  m.def("motion_compensate", [](const Array& ref, int x, int y, int w, int h, MotionVector mv) {
    return toArray(motionCompensate(toPlane(ref), { x, y, w, h }, mv));
  });
  m.def("correct_mvs", [](const std::vector<std::vector<MotionVector>>& mvs, MotionVector initial, int deltaMax) {
    const CorrectionResult r = correctMvs(gridFromRows(mvs), initial, deltaMax);
    return py::make_tuple(gridRows(r.mvs), r.correctedCount);
  });
  m.def(
    "predict_uniform",
    [](const Array& src, const Array& ref, int x, int y, int w, int h, int range) {
      return resultToDict(predictUniform(makeFrame(src, 1), makeFrame(ref, 0), { x, y, w, h }, range));
    },
    py::arg("src"), py::arg("ref"), py::arg("x"), py::arg("y"), py::arg("w"), py::arg("h"), py::arg("range"));
  m.def(
    "predict_uamm",
    [](const Array& src, const Array& ref, const MotionField& field, int x, int y, int w, int h, int range,
       int64_t t0, int64_t t1, int64_t t2, int deltaMax) {
      const UammTiming timing{ TimeInterval(t0), TimeInterval(t1), TimeInterval(t2) };
      return resultToDict(predictUamm(makeFrame(src, field.poc() + 1), makeFrame(ref, field.poc()), field,
                                      { x, y, w, h }, range, timing, deltaMax));
    },
    py::arg("src"), py::arg("ref"), py::arg("ref_field"), py::arg("x"), py::arg("y"), py::arg("w"), py::arg("h"),
    py::arg("range"), py::arg("t0") = 1, py::arg("t1") = 1, py::arg("t2") = 1,
    py::arg("delta_max") = kDefaultDeltaMax);

  m.def(
    "synth_sequence",
    [](int width, int height, int frames, int startX, int startY, int v0x, int v0y, int ax, int ay, int patchW,
       int patchH, const std::string& texture, uint32_t seed, int backgroundLevel) {
      TrajectorySpec spec;
      spec.startX           = startX;
      spec.startY           = startY;
      spec.v0x              = v0x;
      spec.v0y              = v0y;
      spec.ax               = ax;
      spec.ay               = ay;
      spec.patch            = { patchW, patchH, texture == "column_noise" ? TextureKind::ColumnNoise : TextureKind::Noise,
                                seed };
      spec.background.level = backgroundLevel;
      const SyntheticSequence seq = synthSequence(spec, frames, width, height);
      py::list planes;
      for (const FrameBuffer& f: seq.frames)
      {
        planes.append(toArray(f.luma));
      }
      return py::make_tuple(planes, seq.groundTruth);
    },
    py::arg("width"), py::arg("height"), py::arg("frames"), py::arg("start_x"), py::arg("start_y"), py::arg("v0x"),
    py::arg("v0y"), py::arg("ax"), py::arg("ay"), py::arg("patch_w") = 16, py::arg("patch_h") = 16,
    py::arg("texture") = "noise", py::arg("seed") = 1, py::arg("background_level") = 64);

  m.def("read_yuv", [](const std::filesystem::path& path, int w, int h, int count) {
    py::list planes;
    for (const FrameBuffer& f: readYuv(path, w, h, count))
    {
      planes.append(toArray(f.luma));
    }
    return planes;
  });
  m.def("write_yuv", [](const std::filesystem::path& path, const std::vector<Array>& lumas) {
    std::vector<FrameBuffer> frames;
    for (size_t i = 0; i < lumas.size(); i++)
    {
      frames.push_back(makeFrame(lumas[i], static_cast<int>(i)));
    }
    writeYuv(path, frames);
  });

  m.def("psnr", [](const Array& a, const Array& b) { return psnr(toPlane(a), toPlane(b)); });
  m.def("bd_rate", [](const std::vector<std::pair<double, double>>& a, const std::vector<std::pair<double, double>>& b) {
    auto conv = [](const std::vector<std::pair<double, double>>& c) {
      std::vector<RdPoint> out;
      for (const auto& [rate, q]: c)
      {
        out.push_back({ rate, q });
      }
      return out;
    };
    return bdRate(conv(a), conv(b));
  });

  m.def("run_experiment_csv", [](const std::string& configText) {
    const ExperimentReport report = runExperiment(parseConfig(configText));
    std::ostringstream rows;
    std::ostringstream bd;
    writeReportCsv(rows, report);
    writeBdRateCsv(bd, report);
    return py::make_tuple(rows.str(), bd.str());
  });

  m.def("main", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
