#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uamm/bd_rate.hpp"
#include "uamm/motion_field.hpp"
#include "uamm/predictor.hpp"
#include "uamm/sequences.hpp"

namespace uamm {

enum class SequenceSource : uint8_t
{
  Synthetic,
  Yuv,
};

struct SequenceConfig
{
  std::string name;
  SequenceSource source = SequenceSource::Synthetic;
  std::filesystem::path path; // Yuv
  int width  = 64;
  int height = 64;
  int frames = 6;
  TrajectorySpec trajectory; // Synthetic
};

// One point of the rate sweep. There is no quantiser in this pipeline, so
// rate points come from varying the block size and the search range.
struct RatePoint
{
  int blockSize   = kDefaultBlockSize;
  int searchRange = 8;

  std::string label() const;

  bool operator==(const RatePoint&) const = default;
};

// Where the motion buffer of each coded picture comes from.
enum class FieldSource : uint8_t
{
  Auto,        // GroundTruth for synthetic sequences, Decoded otherwise
  GroundTruth, // exact object motion of the synthetic generator
  Decoded,     // sub-block MVs the UAMM pass itself used for the picture
};

struct ExperimentConfig
{
  std::string name = "experiment";
  std::vector<SequenceConfig> sequences;
  std::vector<RatePoint> ratePoints{ { 32, 8 }, { 16, 8 }, { 8, 8 }, { 4, 8 } };
  std::vector<int> qps{ 22, 27, 32, 37 }; // labels only
  std::vector<PredictionMode> modes{ PredictionMode::UniformBaseline, PredictionMode::UammRefined };
  int deltaMax = kDefaultDeltaMax;
  std::filesystem::path outputDir = "out";
  uint32_t seed = 1;
  FieldSource fieldSource = FieldSource::Auto;
  std::optional<unsigned> threads; // overrides UAMM_THREADS when set
};

// Throws ConfigError naming the offending field.
void validateConfig(const ExperimentConfig& cfg);

struct ReportRow
{
  std::string sequence;
  std::string ratePoint;
  PredictionMode mode = PredictionMode::UniformBaseline;
  double meanSad      = 0.0;
  double predPsnrDb   = 0.0;
  double rateProxy    = 0.0;
  double correctedPct = 0.0;
};

struct BdSummaryRow
{
  std::string sequence;
  std::optional<double> bdRatePct; // uamm against the uniform anchor
  std::string note;
};

struct ExperimentReport
{
  std::vector<ReportRow> rows;
  std::vector<BdSummaryRow> bdRates;
};

// Frames of a configured sequence (generated or read from disk).
std::vector<FrameBuffer> loadSequence(const SequenceConfig& seq);

// Signed exp-Golomb code length of v.
int signedExpGolombBits(int v);

// Motion buffers (params derived) for every picture of a sequence as the
// UAMM pass sees them; index k holds the buffer of POC k.
std::vector<MotionField> sequenceFields(const ExperimentConfig& cfg, const SequenceConfig& seq,
                                        const RatePoint& rp);

ExperimentReport runExperiment(const ExperimentConfig& cfg);

// sequence,rate_point,mode,mean_sad,pred_psnr_db,rate_proxy,corrected_pct
void writeReportCsv(std::ostream& os, const ExperimentReport& report);
// sequence,bd_rate_pct,note
void writeBdRateCsv(std::ostream& os, const ExperimentReport& report);
// gnuplot blocks, one per (sequence, mode): rate psnr
void writeRdDat(std::ostream& os, const ExperimentReport& report);

// Runs the experiment and writes <name>_report.csv, <name>_bdrate.csv and
// <name>_rd.dat into cfg.outputDir.
ExperimentReport runAndWrite(const ExperimentConfig& cfg);

} // namespace uamm
