#include "uamm/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace uamm {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
  {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> splitList(const std::string& s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    item = trim(item);
    if (!item.empty())
    {
      out.push_back(item);
    }
  }
  return out;
}

// The INI reader keeps trailing comments as part of the value.
std::string stripComments(const std::string& text)
{
  std::istringstream is(text);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line))
  {
    const auto cut = line.find_first_of(";#");
    os << (cut == std::string::npos ? line : line.substr(0, cut)) << '\n';
  }
  return os.str();
}

long long parseInt(const std::string& where, const std::string& value)
{
  try
  {
    size_t used          = 0;
    const long long v    = std::stoll(value, &used);
    if (used != value.size())
    {
      throw std::invalid_argument(value);
    }
    return v;
  }
  catch (const std::exception&)
  {
    throw ConfigError(where + ": expected an integer, got '" + value + "'");
  }
}

int parseInt32(const std::string& where, const std::string& value)
{
  const long long v = parseInt(where, value);
  if (v < INT32_MIN || v > INT32_MAX)
  {
    throw ConfigError(where + ": value out of range");
  }
  return static_cast<int>(v);
}

// Walks the keys of one section; each key must be handled exactly once.
class SectionReader
{
public:
  SectionReader(std::string name, const pt::ptree& tree) : m_name(std::move(name)), m_tree(tree) {}

  using Handler = std::function<void(const std::string& where, const std::string& value)>;

  void on(const std::string& key, Handler h) { m_handlers[key] = std::move(h); }

  void run() const
  {
    std::set<std::string> seen;
    for (const auto& [key, child]: m_tree)
    {
      const std::string where = m_name + "." + key;
      if (!child.empty())
      {
        throw ConfigError(where + ": nested keys are not supported");
      }
      auto it = m_handlers.find(key);
      if (it == m_handlers.end())
      {
        std::string valid;
        for (const auto& [k, h]: m_handlers)
        {
          valid += (valid.empty() ? "" : ", ") + k;
        }
        throw ConfigError(where + ": unknown key (valid keys: " + valid + ")");
      }
      if (!seen.insert(key).second)
      {
        throw ConfigError(where + ": duplicate key");
      }
      it->second(where, trim(child.data()));
    }
  }

private:
  std::string m_name;
  const pt::ptree& m_tree;
  std::map<std::string, Handler> m_handlers;
};

RatePoint parseRatePoint(const std::string& where, const std::string& item)
{
  const auto colon = item.find(':');
  if (colon == std::string::npos)
  {
    throw ConfigError(where + ": rate point '" + item + "' must be block_size:search_range");
  }
  return { parseInt32(where, trim(item.substr(0, colon))), parseInt32(where, trim(item.substr(colon + 1))) };
}

TextureKind parseTexture(const std::string& where, const std::string& v)
{
  if (v == "noise")
  {
    return TextureKind::Noise;
  }
  if (v == "column_noise")
  {
    return TextureKind::ColumnNoise;
  }
  throw ConfigError(where + ": unknown texture '" + v + "' (valid: noise, column_noise)");
}

BackgroundKind parseBackground(const std::string& where, const std::string& v)
{
  if (v == "flat")
  {
    return BackgroundKind::Flat;
  }
  if (v == "noise")
  {
    return BackgroundKind::Noise;
  }
  if (v == "ramp")
  {
    return BackgroundKind::Ramp;
  }
  throw ConfigError(where + ": unknown background '" + v + "' (valid: flat, noise, ramp)");
}

SequenceConfig parseSequence(const std::string& section, const std::string& name, const pt::ptree& tree,
                             uint32_t defaultSeed)
{
  SequenceConfig s;
  s.name                       = name;
  s.trajectory.patch.seed      = defaultSeed;
  s.trajectory.background.seed = defaultSeed + 1;

  SectionReader r(section, tree);
  r.on("type", [&](const std::string& w, const std::string& v) {
    if (v == "synthetic")
    {
      s.source = SequenceSource::Synthetic;
    }
    else if (v == "yuv")
    {
      s.source = SequenceSource::Yuv;
    }
    else
    {
      throw ConfigError(w + ": unknown type '" + v + "' (valid: synthetic, yuv)");
    }
  });
  r.on("path", [&](const std::string&, const std::string& v) { s.path = v; });
  r.on("width", [&](const std::string& w, const std::string& v) { s.width = parseInt32(w, v); });
  r.on("height", [&](const std::string& w, const std::string& v) { s.height = parseInt32(w, v); });
  r.on("frames", [&](const std::string& w, const std::string& v) { s.frames = parseInt32(w, v); });
  r.on("start_x", [&](const std::string& w, const std::string& v) { s.trajectory.startX = parseInt32(w, v); });
  r.on("start_y", [&](const std::string& w, const std::string& v) { s.trajectory.startY = parseInt32(w, v); });
  r.on("v0x", [&](const std::string& w, const std::string& v) { s.trajectory.v0x = parseInt32(w, v); });
  r.on("v0y", [&](const std::string& w, const std::string& v) { s.trajectory.v0y = parseInt32(w, v); });
  r.on("ax", [&](const std::string& w, const std::string& v) { s.trajectory.ax = parseInt32(w, v); });
  r.on("ay", [&](const std::string& w, const std::string& v) { s.trajectory.ay = parseInt32(w, v); });
  r.on("patch_width", [&](const std::string& w, const std::string& v) { s.trajectory.patch.width = parseInt32(w, v); });
  r.on("patch_height",
       [&](const std::string& w, const std::string& v) { s.trajectory.patch.height = parseInt32(w, v); });
  r.on("patch_texture",
       [&](const std::string& w, const std::string& v) { s.trajectory.patch.texture = parseTexture(w, v); });
  r.on("patch_seed", [&](const std::string& w, const std::string& v) {
    s.trajectory.patch.seed = static_cast<uint32_t>(parseInt(w, v));
  });
  r.on("background",
       [&](const std::string& w, const std::string& v) { s.trajectory.background.kind = parseBackground(w, v); });
  r.on("background_level",
       [&](const std::string& w, const std::string& v) { s.trajectory.background.level = parseInt32(w, v); });
  r.on("background_seed", [&](const std::string& w, const std::string& v) {
    s.trajectory.background.seed = static_cast<uint32_t>(parseInt(w, v));
  });
  r.run();

  if (s.source == SequenceSource::Yuv && s.path.empty())
  {
    throw ConfigError(section + ".path: required for type = yuv");
  }
  return s;
}

pt::ptree readTree(const std::string& text)
{
  std::istringstream is(stripComments(text));
  pt::ptree tree;
  try
  {
    pt::read_ini(is, tree);
  }
  catch (const pt::ini_parser_error& e)
  {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  return tree;
}

std::string readFile(const std::filesystem::path& path)
{
  std::ifstream is(path);
  if (!is)
  {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

} // namespace

PredictionMode parseMode(const std::string& name)
{
  if (name == "uniform")
  {
    return PredictionMode::UniformBaseline;
  }
  if (name == "uamm")
  {
    return PredictionMode::UammRefined;
  }
  throw ConfigError("unknown mode '" + name + "' (valid modes: uniform, uamm)");
}

FieldSource parseFieldSource(const std::string& name)
{
  if (name == "auto")
  {
    return FieldSource::Auto;
  }
  if (name == "ground_truth")
  {
    return FieldSource::GroundTruth;
  }
  if (name == "decoded")
  {
    return FieldSource::Decoded;
  }
  throw ConfigError("unknown field source '" + name + "' (valid: auto, ground_truth, decoded)");
}

ExperimentConfig parseConfig(const std::string& text, std::optional<uint32_t> seedOverride)
{
  const pt::ptree tree = readTree(text);
  ExperimentConfig cfg;

  // the seed feeds sequence defaults, so read the experiment section first
  if (auto exp = tree.get_child_optional("experiment"))
  {
    SectionReader r("experiment", *exp);
    r.on("name", [&](const std::string& w, const std::string& v) {
      if (v.empty() || v.find_first_of("/\\") != std::string::npos)
      {
        throw ConfigError(w + ": must be a non-empty file-name-safe string");
      }
      cfg.name = v;
    });
    r.on("output_dir", [&](const std::string&, const std::string& v) { cfg.outputDir = v; });
    r.on("modes", [&](const std::string& w, const std::string& v) {
      cfg.modes.clear();
      for (const std::string& m: splitList(v))
      {
        try
        {
          cfg.modes.push_back(parseMode(m));
        }
        catch (const ConfigError& e)
        {
          throw ConfigError(w + ": " + e.what());
        }
      }
    });
    r.on("qps", [&](const std::string& w, const std::string& v) {
      cfg.qps.clear();
      for (const std::string& q: splitList(v))
      {
        cfg.qps.push_back(parseInt32(w, q));
      }
    });
    r.on("rate_points", [&](const std::string& w, const std::string& v) {
      cfg.ratePoints.clear();
      for (const std::string& item: splitList(v))
      {
        cfg.ratePoints.push_back(parseRatePoint(w, item));
      }
    });
    r.on("delta_max", [&](const std::string& w, const std::string& v) { cfg.deltaMax = parseInt32(w, v); });
    r.on("seed", [&](const std::string& w, const std::string& v) { cfg.seed = static_cast<uint32_t>(parseInt(w, v)); });
    r.on("threads", [&](const std::string& w, const std::string& v) {
      const long long n = parseInt(w, v);
      if (n < 0)
      {
        throw ConfigError(w + ": must be >= 0");
      }
      cfg.threads = static_cast<unsigned>(n);
    });
    r.on("field_source", [&](const std::string& w, const std::string& v) {
      try
      {
        cfg.fieldSource = parseFieldSource(v);
      }
      catch (const ConfigError& e)
      {
        throw ConfigError(w + ": " + e.what());
      }
    });
    r.run();
  }
  if (seedOverride)
  {
    cfg.seed = *seedOverride;
  }

  const std::string prefix = "sequence.";
  uint32_t index           = 0;
  for (const auto& [section, child]: tree)
  {
    if (section == "experiment")
    {
      continue;
    }
    if (section.rfind(prefix, 0) != 0 || section.size() == prefix.size())
    {
      throw ConfigError("unknown section [" + section + "] (expected [experiment] or [sequence.<name>])");
    }
    cfg.sequences.push_back(parseSequence(section, section.substr(prefix.size()), child, cfg.seed + 2 * index));
    index++;
  }

  validateConfig(cfg);
  return cfg;
}

ExperimentConfig loadConfig(const std::filesystem::path& path, std::optional<uint32_t> seedOverride)
{
  return parseConfig(readFile(path), seedOverride);
}

SequenceConfig loadTrajectoryFile(const std::filesystem::path& path)
{
  const pt::ptree tree = readTree(readFile(path));
  if (tree.size() != 1)
  {
    throw ConfigError(path.string() + ": expected exactly one [trajectory] or [sequence.<name>] section");
  }
  const auto& [section, child] = *tree.begin();
  std::string name             = "trajectory";
  if (section.rfind("sequence.", 0) == 0)
  {
    name = section.substr(9);
  }
  else if (section != "trajectory")
  {
    throw ConfigError(path.string() + ": unknown section [" + section + "]");
  }
  SequenceConfig seq = parseSequence(section, name, child, 1);
  if (seq.source != SequenceSource::Synthetic)
  {
    throw ConfigError(section + ".type: synth needs a synthetic sequence");
  }
  return seq;
}

} // namespace uamm
