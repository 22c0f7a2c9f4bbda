#include "uamm/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <fmt/format.h>

#include "uamm/metrics.hpp"
#include "uamm/parallel.hpp"

namespace uamm {

namespace {

struct LoadedSequence
{
  std::vector<FrameBuffer> frames;
  std::optional<SyntheticSequence> synthetic;
};

LoadedSequence load(const SequenceConfig& seq)
{
  LoadedSequence out;
  if (seq.source == SequenceSource::Synthetic)
  {
    out.synthetic = synthSequence(seq.trajectory, seq.frames, seq.width, seq.height);
    out.frames    = out.synthetic->frames;
  }
  else
  {
    if (!std::filesystem::exists(seq.path))
    {
      throw ConfigError("sequence '" + seq.name + "': file not found: " + seq.path.string());
    }
    out.frames = readYuv(seq.path, seq.width, seq.height, seq.frames);
  }
  return out;
}

FieldSource resolve(FieldSource fs, const SequenceConfig& seq)
{
  if (fs == FieldSource::Auto)
  {
    return seq.source == SequenceSource::Synthetic ? FieldSource::GroundTruth : FieldSource::Decoded;
  }
  if (fs == FieldSource::GroundTruth && seq.source != SequenceSource::Synthetic)
  {
    throw ConfigError("sequence '" + seq.name + "': field_source = ground_truth needs a synthetic sequence");
  }
  return fs;
}

std::vector<BlockSpec> tileBlocks(int width, int height, int blockSize)
{
  std::vector<BlockSpec> blocks;
  for (int y = 0; y < height; y += blockSize)
  {
    for (int x = 0; x < width; x += blockSize)
    {
      blocks.push_back({ x, y, std::min(blockSize, width - x), std::min(blockSize, height - y) });
    }
  }
  return blocks;
}

struct PassStats
{
  uint64_t totalSad     = 0;
  uint64_t blocks       = 0;
  uint64_t sse          = 0;
  uint64_t pixels       = 0;
  double rateProxy      = 0.0;
  uint64_t corrected    = 0;
  uint64_t subblocks    = 0;
};

struct PassOutput
{
  PassStats stats;
  std::vector<MotionField> fields; // UAMM mode only, one per POC
};

MotionField decodedField(const FrameBuffer& frame, const std::vector<BlockSpec>& blocks,
                         const std::vector<PredictionResult>& results)
{
  MotionField field = MotionField::forPicture(frame.poc, frame.width(), frame.height());
  for (size_t b = 0; b < blocks.size(); b++)
  {
    const BlockSpec& blk          = blocks[b];
    const Grid<MotionVector>& mvs = results[b].subblockMvs;
    for (int sy = 0; sy < mvs.height(); sy++)
    {
      for (int sx = 0; sx < mvs.width(); sx++)
      {
        field.setInter(blk.x / kUnitSize + sx, blk.y / kUnitSize + sy, mvs(sx, sy), TimeInterval(1));
      }
    }
  }
  return field;
}

std::vector<MotionField> groundTruthFields(const SequenceConfig& seq, const SyntheticSequence& synth)
{
  std::vector<MotionField> fields;
  for (int k = 0; k < static_cast<int>(synth.frames.size()); k++)
  {
    MotionField f = groundTruthField(seq.trajectory, synth, k);
    fields.push_back(k == 0 ? f : deriveFieldParams(f, fields.back()));
  }
  return fields;
}

PassOutput runPass(const ExperimentConfig& cfg, const SequenceConfig& seq, const LoadedSequence& loaded,
                   const RatePoint& rp, PredictionMode mode)
{
  const auto& frames = loaded.frames;
  const std::vector<BlockSpec> blocks = tileBlocks(seq.width, seq.height, rp.blockSize);
  const bool uamm = mode == PredictionMode::UammRefined;

  PassOutput out;
  if (uamm)
  {
    if (resolve(cfg.fieldSource, seq) == FieldSource::GroundTruth)
    {
      out.fields = groundTruthFields(seq, *loaded.synthetic);
    }
    else if (!frames.empty())
    {
      out.fields.push_back(MotionField::forPicture(frames[0].poc, seq.width, seq.height));
    }
  }
  const bool decoded = uamm && out.fields.size() < frames.size();

  PassStats& st = out.stats;
  std::vector<PredictionResult> results(blocks.size());
  for (size_t k = 1; k < frames.size(); k++)
  {
    const FrameBuffer& src = frames[k];
    const FrameBuffer& ref = frames[k - 1];
    parallelFor(static_cast<int>(blocks.size()), [&](int b) {
      const BlockSpec& blk = blocks[static_cast<size_t>(b)];
      results[static_cast<size_t>(b)] =
        uamm ? predictUamm(src, ref, out.fields[k - 1], blk, rp.searchRange, UammTiming{}, cfg.deltaMax)
             : predictUniform(src, ref, blk, rp.searchRange);
    });

    Plane pred(seq.width, seq.height);
    MotionVector left;
    for (size_t b = 0; b < blocks.size(); b++)
    {
      const BlockSpec& blk     = blocks[b];
      const PredictionResult& r = results[b];
      for (int j = 0; j < blk.h; j++)
      {
        for (int i = 0; i < blk.w; i++)
        {
          pred.at(blk.x + i, blk.y + j) = r.pred.at(i, j);
        }
      }
      if (blk.x == 0)
      {
        left = {};
      }
      const MotionVector d = r.initialMv - left;
      left                 = r.initialMv;
      st.rateProxy += signedExpGolombBits(d.x / kMvUnitsPerPel) + signedExpGolombBits(d.y / kMvUnitsPerPel);
      st.rateProxy += std::log2(static_cast<double>(r.sad) + 1.0);
      st.totalSad += r.sad;
      st.blocks++;
      st.corrected += static_cast<uint64_t>(r.correctedCount);
      st.subblocks += r.subblockMvs.size();
    }
    st.sse += sse(src.luma, pred);
    st.pixels += src.luma.samples().size();

    if (decoded)
    {
      out.fields.push_back(deriveFieldParams(decodedField(src, blocks, results), out.fields.back()));
    }
  }
  return out;
}

std::string fmtReal(double v) { return std::isinf(v) ? (v > 0 ? "inf" : "-inf") : fmt::format("{:.6f}", v); }

} // namespace

std::string RatePoint::label() const { return fmt::format("bs{}_sr{}", blockSize, searchRange); }

void validateConfig(const ExperimentConfig& cfg)
{
  if (cfg.modes.empty())
  {
    throw ConfigError("experiment.modes: at least one mode is required (valid modes: uniform, uamm)");
  }
  if (std::set<PredictionMode>(cfg.modes.begin(), cfg.modes.end()).size() != cfg.modes.size())
  {
    throw ConfigError("experiment.modes: duplicate mode");
  }
  if (cfg.ratePoints.empty())
  {
    throw ConfigError("experiment.rate_points: at least one rate point is required");
  }
  for (const RatePoint& rp: cfg.ratePoints)
  {
    if (rp.blockSize < kUnitSize || rp.blockSize % kUnitSize != 0)
    {
      throw ConfigError("experiment.rate_points: block size " + std::to_string(rp.blockSize)
                        + " must be a positive multiple of 4");
    }
    if (rp.searchRange < 0)
    {
      throw ConfigError("experiment.rate_points: search range must be >= 0");
    }
  }
  if (cfg.deltaMax < 0)
  {
    throw ConfigError("experiment.delta_max: must be >= 0");
  }
  std::set<std::string> names;
  for (const SequenceConfig& s: cfg.sequences)
  {
    const std::string where = "sequence." + s.name;
    if (!names.insert(s.name).second)
    {
      throw ConfigError(where + ": duplicate sequence name");
    }
    if (s.width <= 0 || s.height <= 0 || s.width % kUnitSize != 0 || s.height % kUnitSize != 0)
    {
      throw ConfigError(where + ".width/height: must be positive multiples of 4");
    }
    if (s.frames < 1)
    {
      throw ConfigError(where + ".frames: must be >= 1");
    }
    resolve(cfg.fieldSource, s);
  }
}

std::vector<FrameBuffer> loadSequence(const SequenceConfig& seq) { return load(seq).frames; }

int signedExpGolombBits(int v)
{
  const uint64_t code = v > 0 ? 2 * static_cast<uint64_t>(v) - 1 : 2 * static_cast<uint64_t>(-static_cast<int64_t>(v));
  return 2 * (std::bit_width(code + 1) - 1) + 1;
}

std::vector<MotionField> sequenceFields(const ExperimentConfig& cfg, const SequenceConfig& seq, const RatePoint& rp)
{
  const LoadedSequence loaded = load(seq);
  if (resolve(cfg.fieldSource, seq) == FieldSource::GroundTruth)
  {
    return groundTruthFields(seq, *loaded.synthetic);
  }
  return runPass(cfg, seq, loaded, rp, PredictionMode::UammRefined).fields;
}

ExperimentReport runExperiment(const ExperimentConfig& cfg)
{
  validateConfig(cfg);
  ExperimentReport report;
  for (const SequenceConfig& seq: cfg.sequences)
  {
    const LoadedSequence loaded = load(seq);
    std::map<PredictionMode, std::vector<RdPoint>> curves;
    for (const RatePoint& rp: cfg.ratePoints)
    {
      for (PredictionMode mode: cfg.modes)
      {
        const PassStats st = runPass(cfg, seq, loaded, rp, mode).stats;
        ReportRow row;
        row.sequence     = seq.name;
        row.ratePoint    = rp.label();
        row.mode         = mode;
        row.meanSad      = st.blocks ? static_cast<double>(st.totalSad) / static_cast<double>(st.blocks) : 0.0;
        row.predPsnrDb   = st.pixels ? psnrFromMse(static_cast<double>(st.sse) / static_cast<double>(st.pixels))
                                     : kPsnrInfinite;
        row.rateProxy    = st.rateProxy;
        row.correctedPct = st.subblocks ? 100.0 * static_cast<double>(st.corrected) / static_cast<double>(st.subblocks)
                                        : 0.0;
        report.rows.push_back(row);
        curves[mode].push_back({ row.rateProxy, row.predPsnrDb });
      }
    }

    BdSummaryRow bd{ seq.name, std::nullopt, "" };
    if (!curves.contains(PredictionMode::UniformBaseline) || !curves.contains(PredictionMode::UammRefined))
    {
      bd.note = "needs both uniform and uamm modes";
    }
    else
    {
      auto byRate = [](std::vector<RdPoint> c) {
        std::sort(c.begin(), c.end(), [](const RdPoint& a, const RdPoint& b) { return a.rate < b.rate; });
        return c;
      };
      try
      {
        bd.bdRatePct = bdRate(byRate(curves[PredictionMode::UniformBaseline]), byRate(curves[PredictionMode::UammRefined]));
      }
      catch (const Error& e)
      {
        bd.note = e.what();
      }
    }
    report.bdRates.push_back(bd);
  }
  return report;
}

void writeReportCsv(std::ostream& os, const ExperimentReport& report)
{
  os << "sequence,rate_point,mode,mean_sad,pred_psnr_db,rate_proxy,corrected_pct\n";
  for (const ReportRow& r: report.rows)
  {
    os << r.sequence << ',' << r.ratePoint << ',' << toString(r.mode) << ',' << fmtReal(r.meanSad) << ','
       << fmtReal(r.predPsnrDb) << ',' << fmtReal(r.rateProxy) << ',' << fmtReal(r.correctedPct) << '\n';
  }
}

void writeBdRateCsv(std::ostream& os, const ExperimentReport& report)
{
  os << "sequence,bd_rate_pct,note\n";
  for (const BdSummaryRow& r: report.bdRates)
  {
    std::string note = r.note;
    std::replace(note.begin(), note.end(), ',', ';');
    os << r.sequence << ',' << (r.bdRatePct ? fmtReal(*r.bdRatePct) : "") << ',' << note << '\n';
  }
}

void writeRdDat(std::ostream& os, const ExperimentReport& report)
{
  // rows are grouped by sequence, then rate point, then mode
  std::vector<std::pair<std::string, PredictionMode>> keys;
  for (const ReportRow& r: report.rows)
  {
    const auto key = std::make_pair(r.sequence, r.mode);
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
    {
      keys.push_back(key);
    }
  }
  for (const auto& [seq, mode]: keys)
  {
    os << "# " << seq << ' ' << toString(mode) << "\n# rate_proxy pred_psnr_db\n";
    for (const ReportRow& r: report.rows)
    {
      if (r.sequence == seq && r.mode == mode)
      {
        os << fmtReal(r.rateProxy) << ' ' << fmtReal(r.predPsnrDb) << '\n';
      }
    }
    os << "\n\n";
  }
}

ExperimentReport runAndWrite(const ExperimentConfig& cfg)
{
  ExperimentReport report = runExperiment(cfg);
  std::filesystem::create_directories(cfg.outputDir);
  auto open = [&](const std::string& suffix) {
    const auto path = cfg.outputDir / (cfg.name + suffix);
    std::ofstream os(path, std::ios::trunc);
    if (!os)
    {
      throw Error("cannot write " + path.string());
    }
    return os;
  };
  {
    auto os = open("_report.csv");
    writeReportCsv(os, report);
  }
  {
    auto os = open("_bdrate.csv");
    writeBdRateCsv(os, report);
  }
  {
    auto os = open("_rd.dat");
    writeRdDat(os, report);
  }
  return report;
}

} // namespace uamm
