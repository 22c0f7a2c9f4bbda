#include "uamm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "uamm/bd_rate.hpp"
#include "uamm/config.hpp"
#include "uamm/experiment.hpp"
#include "uamm/parallel.hpp"

namespace uamm::cli {

namespace {

struct Overrides
{
  std::string outputDir;
  std::string modes;
  std::optional<int> blockSize;
  std::optional<int> searchRange;
  std::optional<int> deltaMax;
  std::optional<uint32_t> seed;
  std::optional<unsigned> threads;
  std::string fieldSource;
};

void addOverrideFlags(CLI::App* cmd, Overrides& o)
{
  cmd->add_option("--output-dir", o.outputDir, "Directory for CSV output");
  cmd->add_option("--modes", o.modes, "Comma-separated modes (uniform, uamm)");
  cmd->add_option("--block-size", o.blockSize, "Block size for every rate point");
  cmd->add_option("--search-range", o.searchRange, "Search range in pels for every rate point");
  cmd->add_option("--delta-max", o.deltaMax, "MV correction band in 1/16-pel units");
  cmd->add_option("--seed", o.seed, "Base seed for synthetic textures");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = auto)");
  cmd->add_option("--field-source", o.fieldSource, "auto, ground_truth or decoded");
}

ExperimentConfig loadWithOverrides(const std::string& path, const Overrides& o)
{
  if (!std::filesystem::exists(path))
  {
    throw ConfigError("config file not found: " + path);
  }
  ExperimentConfig cfg = loadConfig(path, o.seed);
  if (!o.outputDir.empty())
  {
    cfg.outputDir = o.outputDir;
  }
  if (!o.modes.empty())
  {
    cfg.modes.clear();
    std::stringstream ss(o.modes);
    std::string m;
    while (std::getline(ss, m, ','))
    {
      cfg.modes.push_back(parseMode(m));
    }
  }
  for (RatePoint& rp: cfg.ratePoints)
  {
    rp.blockSize   = o.blockSize.value_or(rp.blockSize);
    rp.searchRange = o.searchRange.value_or(rp.searchRange);
  }
  if (o.blockSize || o.searchRange)
  {
    // overriding collapses identical rate points
    std::vector<RatePoint> unique;
    for (const RatePoint& rp: cfg.ratePoints)
    {
      if (std::find(unique.begin(), unique.end(), rp) == unique.end())
      {
        unique.push_back(rp);
      }
    }
    cfg.ratePoints = unique;
  }
  cfg.deltaMax = o.deltaMax.value_or(cfg.deltaMax);
  if (o.threads)
  {
    cfg.threads = o.threads;
  }
  if (!o.fieldSource.empty())
  {
    cfg.fieldSource = parseFieldSource(o.fieldSource);
  }
  validateConfig(cfg);
  if (cfg.threads)
  {
    setWorkerThreads(*cfg.threads);
  }
  return cfg;
}

std::string describe(const std::optional<double>& v)
{
  return v ? fmt::format("{:.4f}%", *v) : std::string("n/a");
}

int cmdPredict(const std::string& configPath, const Overrides& o, std::ostream& out)
{
  const ExperimentConfig cfg    = loadWithOverrides(configPath, o);
  const ExperimentReport report = runAndWrite(cfg);
  for (const SequenceConfig& seq: cfg.sequences)
  {
    std::string line = seq.name + ":";
    for (PredictionMode mode: cfg.modes)
    {
      double sadSum = 0.0;
      int n         = 0;
      for (const ReportRow& r: report.rows)
      {
        if (r.sequence == seq.name && r.mode == mode)
        {
          sadSum += r.meanSad;
          n++;
        }
      }
      line += fmt::format(" {} mean_sad={:.3f}", toString(mode), n ? sadSum / n : 0.0);
    }
    for (const BdSummaryRow& bd: report.bdRates)
    {
      if (bd.sequence == seq.name)
      {
        line += " bd_rate=" + describe(bd.bdRatePct);
      }
    }
    out << line << '\n';
  }
  out << "wrote " << (cfg.outputDir / (cfg.name + "_report.csv")).string() << '\n';
  return kExitOk;
}

int cmdDemoField(const std::string& configPath, const Overrides& o, std::ostream& out)
{
  const ExperimentConfig cfg = loadWithOverrides(configPath, o);
  const auto dir             = cfg.outputDir / "fields";
  std::filesystem::create_directories(dir);
  for (const SequenceConfig& seq: cfg.sequences)
  {
    const std::vector<MotionField> fields = sequenceFields(cfg, seq, cfg.ratePoints.front());
    int written                           = 0;
    // POC 0 is intra and has nothing to show
    for (size_t k = 1; k < fields.size(); k++)
    {
      const auto path = dir / fmt::format("{}_poc{}.csv", seq.name, fields[k].poc());
      std::ofstream os(path, std::ios::trunc);
      if (!os)
      {
        throw Error("cannot write " + path.string());
      }
      writeFieldCsv(os, fields[k]);
      written++;
    }
    out << seq.name << ": wrote " << written << " field dumps to " << dir.string() << '\n';
  }
  return kExitOk;
}

std::vector<RdPoint> readCurve(const std::string& path)
{
  std::ifstream is(path);
  if (!is)
  {
    throw ConfigError("cannot open RD curve " + path);
  }
  std::vector<RdPoint> curve;
  std::string line;
  int lineNo = 0;
  while (std::getline(is, line))
  {
    lineNo++;
    if (line.empty() || line[0] == '#')
    {
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    RdPoint p;
    if (!(ls >> p.rate >> p.psnr))
    {
      if (curve.empty() && lineNo == 1)
      {
        continue; // header
      }
      throw ConfigError(path + ":" + std::to_string(lineNo) + ": expected 'rate,psnr'");
    }
    curve.push_back(p);
  }
  std::sort(curve.begin(), curve.end(), [](const RdPoint& a, const RdPoint& b) { return a.rate < b.rate; });
  return curve;
}

int cmdBdRate(const std::string& a, const std::string& b, std::ostream& out)
{
  const double pct = bdRate(readCurve(a), readCurve(b));
  out << fmt::format("BD-rate: {:.4f}%\n", pct);
  return kExitOk;
}

int cmdSynth(const std::string& specPath, const std::string& outPath, const std::string& gtPath, std::ostream& out)
{
  if (!std::filesystem::exists(specPath))
  {
    throw ConfigError("spec file not found: " + specPath);
  }
  const SequenceConfig seq      = loadTrajectoryFile(specPath);
  const SyntheticSequence synth = synthSequence(seq.trajectory, seq.frames, seq.width, seq.height);
  writeYuv(outPath, synth.frames);
  if (!gtPath.empty())
  {
    std::ofstream os(gtPath, std::ios::trunc);
    if (!os)
    {
      throw Error("cannot write " + gtPath);
    }
    os << "frame,pos_x,pos_y,mvx,mvy\n";
    for (int k = 0; k < seq.frames; k++)
    {
      const MotionVector pos = objectPosition(seq.trajectory, k);
      os << k << ',' << pos.x << ',' << pos.y << ',';
      const auto& gt = synth.groundTruth[static_cast<size_t>(k)];
      os << (gt ? std::to_string(gt->x) : "") << ',' << (gt ? std::to_string(gt->y) : "") << '\n';
    }
  }
  out << fmt::format("wrote {} frames of {}x{} to {}\n", seq.frames, seq.width, seq.height, outPath);
  return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{ "UAMM inter-prediction laboratory", "uamm" };
  app.require_subcommand(1);

  std::string configPath;
  Overrides overrides;

  auto* predict = app.add_subcommand("predict", "Run the baseline/UAMM experiment and write CSV reports");
  predict->add_option("--config", configPath, "Experiment config file")->required();
  addOverrideFlags(predict, overrides);

  auto* demo = app.add_subcommand("demo-field", "Dump the motion buffer of every coded picture as CSV");
  demo->add_option("--config", configPath, "Experiment config file")->required();
  addOverrideFlags(demo, overrides);

  std::string curveA;
  std::string curveB;
  auto* bd = app.add_subcommand("bd-rate", "BD-rate of curve B against anchor curve A (CSV rows: rate,psnr)");
  bd->add_option("csvA", curveA, "Anchor curve")->required();
  bd->add_option("csvB", curveB, "Tested curve")->required();

  std::string specPath;
  std::string outPath;
  std::string gtPath;
  auto* synth = app.add_subcommand("synth", "Render a synthetic trajectory to a YUV 4:2:0 file");
  synth->add_option("--spec", specPath, "Trajectory description")->required();
  synth->add_option("--out", outPath, "Output .yuv")->required();
  synth->add_option("--gt", gtPath, "Optional ground-truth MV CSV");

  try
  {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try
  {
    if (predict->parsed())
    {
      return cmdPredict(configPath, overrides, out);
    }
    if (demo->parsed())
    {
      return cmdDemoField(configPath, overrides, out);
    }
    if (bd->parsed())
    {
      return cmdBdRate(curveA, curveB, out);
    }
    return cmdSynth(specPath, outPath, gtPath, out);
  }
  catch (const ConfigError& e)
  {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  catch (const std::exception& e)
  {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

} // namespace uamm::cli
