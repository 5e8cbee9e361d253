#if defined(GSDBENCH_HAVE_OPENSSL)
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif

#include "gsdbench/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <regex>
#include <sstream>

#include <httplib.h>

namespace gsdbench {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double_field(const std::string& field, const std::string& where) {
  const std::string t = trim(field);
  if (t.empty()) return std::numeric_limits<double>::quiet_NaN();
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    throw DataError("unparseable number \"" + t + "\" " + where);
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

namespace {

MetricConfig parse_metric_config(const ordered_json& j, std::size_t index) {
  if (!j.is_object())
    throw DataError("config: metrics[" + std::to_string(index) +
                    "] must be an object");
  MetricConfig m;
  bool saw_name = false, saw_scale = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "name") {
      if (!value.is_string()) throw DataError("config: metric name must be a string");
      m.name = value.get<std::string>();
      saw_name = true;
    } else if (key == "scale") {
      const std::string s = value.get<std::string>();
      if (s == "cardinal") m.scale = Scale::Cardinal;
      else if (s == "ordinal") m.scale = Scale::Ordinal;
      else throw DataError("config: metric scale must be cardinal or ordinal");
      saw_scale = true;
    } else if (key == "orientation") {
      const std::string s = value.get<std::string>();
      if (s == "higher") m.lower_is_better = false;
      else if (s == "lower") m.lower_is_better = true;
      else throw DataError("config: orientation must be higher or lower");
    } else if (key == "transform") {
      const std::string s = value.get<std::string>();
      if (s == "none") m.transform = Transform::None;
      else if (s == "decile") m.transform = Transform::Decile;
      else if (s == "minmax") m.transform = Transform::MinMax;
      else throw DataError("config: transform must be none, decile or minmax");
    } else if (key == "bins") {
      if (!value.is_number_integer())
        throw DataError("config: bins must be an integer");
      m.bins = value.get<int>();
    } else {
      throw DataError("config: unknown metric key " + key);
    }
  }
  if (!saw_name || m.name.empty())
    throw DataError("config: every metric needs a nonempty name");
  if (!saw_scale)
    throw DataError("config: metric " + m.name + " is missing its scale");
  if (m.bins < 2)
    throw DataError("config: metric " + m.name + " needs at least 2 bins");
  return m;
}

}  // namespace

AnalysisConfig parse_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("config must be a JSON object");

  AnalysisConfig c;
  bool saw_metrics = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "version") {
      if (!value.is_number_integer() || value.get<int>() != 1)
        throw DataError("config: unsupported version (expected 1)");
      c.version = 1;
    } else if (key == "metrics") {
      if (!value.is_array()) throw DataError("config: metrics must be an array");
      for (std::size_t i = 0; i < value.size(); ++i)
        c.metrics.push_back(parse_metric_config(value[i], i));
      saw_metrics = true;
    } else if (key == "alpha") {
      c.alpha = value.get<double>();
    } else if (key == "n_resamples") {
      c.n_resamples = value.get<int>();
    } else if (key == "delta") {
      c.delta = value.get<double>();
    } else if (key == "epsilon") {
      if (!value.is_null()) c.epsilon = value.get<double>();
    } else if (key == "seed") {
      c.seed = value.get<std::uint64_t>();
    } else if (key == "k_max") {
      c.k_max = value.get<int>();
    } else if (key == "rounding_decimals") {
      c.rounding_decimals = value.get<int>();
    } else if (key == "per_dataset_bins") {
      c.per_dataset_bins = value.get<bool>();
    } else {
      throw DataError("config: unknown key " + key);
    }
  }
  if (!saw_metrics || c.metrics.empty())
    throw DataError("config: at least one metric must be declared");
  for (std::size_t a = 0; a < c.metrics.size(); ++a)
    for (std::size_t b = a + 1; b < c.metrics.size(); ++b)
      if (c.metrics[a].name == c.metrics[b].name)
        throw DataError("config: duplicate metric " + c.metrics[a].name);
  bool seen_ordinal = false;
  for (const auto& m : c.metrics) {
    if (m.scale == Scale::Ordinal) seen_ordinal = true;
    else if (seen_ordinal)
      throw DataError("config: cardinal metrics must be declared before "
                      "ordinal ones");
  }
  if (!(c.alpha > 0.0 && c.alpha < 1.0))
    throw DataError("config: alpha must lie in (0,1)");
  if (c.n_resamples < 1) throw DataError("config: n_resamples must be >= 1");
  if (!(c.delta >= 0.0 && c.delta <= 1.0))
    throw DataError("config: delta must lie in [0,1]");
  if (c.epsilon && !(*c.epsilon >= 0.0))
    throw DataError("config: epsilon must be >= 0");
  if (c.k_max < -1) throw DataError("config: k_max must be -1 or >= 0");
  if (c.rounding_decimals < 0 || c.rounding_decimals > 12)
    throw DataError("config: rounding_decimals must lie in [0,12]");
  return c;
}

AnalysisConfig load_config(const std::string& path) {
  return parse_config(read_text_file(path));
}

std::string config_to_json(const AnalysisConfig& config) {
  ordered_json j;
  j["version"] = config.version;
  j["metrics"] = ordered_json::array();
  for (const auto& m : config.metrics) {
    ordered_json mj;
    mj["name"] = m.name;
    mj["scale"] = m.scale == Scale::Cardinal ? "cardinal" : "ordinal";
    mj["orientation"] = m.lower_is_better ? "lower" : "higher";
    switch (m.transform) {
      case Transform::None: mj["transform"] = "none"; break;
      case Transform::Decile:
        mj["transform"] = "decile";
        mj["bins"] = m.bins;
        break;
      case Transform::MinMax: mj["transform"] = "minmax"; break;
    }
    j["metrics"].push_back(mj);
  }
  j["alpha"] = config.alpha;
  j["n_resamples"] = config.n_resamples;
  j["delta"] = config.delta;
  if (config.epsilon) j["epsilon"] = *config.epsilon;
  else j["epsilon"] = nullptr;
  j["seed"] = config.seed;
  j["k_max"] = config.k_max;
  j["rounding_decimals"] = config.rounding_decimals;
  j["per_dataset_bins"] = config.per_dataset_bins;
  return render_json(j);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::vector<std::string>> parse_csv_fields(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        row.push_back(field);
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any || !field.empty() || !row.empty()) {
          row.push_back(field);
          rows.push_back(row);
        }
        row.clear();
        field.clear();
        any = false;
        break;
      default:
        field += ch;
        any = true;
    }
  }
  if (quoted) throw DataError("csv: unterminated quoted field");
  if (any || !field.empty() || !row.empty()) {
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

RawTable read_csv(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_csv_text(buffer.str());
}

RawTable read_csv_text(const std::string& text) {
  const auto rows = parse_csv_fields(text);
  if (rows.empty()) throw DataError("csv: empty input");
  const auto& header = rows.front();
  if (header.size() < 3 || trim(header[0]) != "dataset" ||
      trim(header[1]) != "classifier")
    throw DataError("csv: header must start with dataset, classifier and "
                    "declare at least one metric column");
  RawTable raw;
  for (std::size_t c = 2; c < header.size(); ++c) {
    const std::string name = trim(header[c]);
    if (name.empty()) throw DataError("csv: empty metric column name");
    raw.metric_columns.push_back(name);
  }
  std::map<std::string, std::size_t> dataset_ids, classifier_ids;
  std::map<std::pair<std::size_t, std::size_t>, bool> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != header.size())
      throw DataError("csv: row " + std::to_string(r + 1) + " has " +
                      std::to_string(cells.size()) + " fields, expected " +
                      std::to_string(header.size()));
    RawTable::Row row;
    const std::string dataset = trim(cells[0]);
    const std::string classifier = trim(cells[1]);
    if (dataset.empty() || classifier.empty())
      throw DataError("csv: row " + std::to_string(r + 1) +
                      " has an empty dataset or classifier id");
    auto dit = dataset_ids.find(dataset);
    if (dit == dataset_ids.end()) {
      dit = dataset_ids.emplace(dataset, raw.datasets.size()).first;
      raw.datasets.push_back(dataset);
    }
    auto cit = classifier_ids.find(classifier);
    if (cit == classifier_ids.end()) {
      cit = classifier_ids.emplace(classifier, raw.classifiers.size()).first;
      raw.classifiers.push_back(classifier);
    }
    row.dataset = dit->second;
    row.classifier = cit->second;
    if (!seen.emplace(std::make_pair(row.dataset, row.classifier), true).second)
      throw DataError("csv: duplicate row for (" + classifier + ", " + dataset +
                      ")");
    for (std::size_t c = 2; c < cells.size(); ++c)
      row.values.push_back(parse_double_field(
          cells[c], "in row " + std::to_string(r + 1) + ", column " +
                        raw.metric_columns[c - 2]));
    raw.rows.push_back(std::move(row));
  }
  return raw;
}

// ---------------------------------------------------------------------------
// Ingestion

namespace {

double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

}  // namespace

IngestResult ingest(const RawTable& raw, const AnalysisConfig& config) {
  IngestResult out;
  const std::size_t n_datasets = raw.datasets.size();
  const std::size_t n_classifiers = raw.classifiers.size();
  const std::size_t n_metrics = config.metrics.size();

  std::vector<std::size_t> column_of(n_metrics);
  for (std::size_t m = 0; m < n_metrics; ++m) {
    auto it = std::find(raw.metric_columns.begin(), raw.metric_columns.end(),
                        config.metrics[m].name);
    if (it == raw.metric_columns.end()) {
      out.violations.push_back("declared metric " + config.metrics[m].name +
                               " is not a column of the input");
      return out;
    }
    column_of[m] = static_cast<std::size_t>(it - raw.metric_columns.begin());
  }
  for (const auto& column : raw.metric_columns) {
    bool declared = false;
    for (const auto& m : config.metrics) declared |= m.name == column;
    if (!declared)
      out.warnings.push_back("ignoring undeclared column " + column);
  }

  // cell[(c, d)][m]: raw value with orientation applied; NaN = missing.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> cells(
      n_classifiers * n_datasets, std::vector<double>(n_metrics, nan));
  std::vector<char> present(n_classifiers * n_datasets, 0);
  for (const auto& row : raw.rows) {
    const std::size_t slot = row.classifier * n_datasets + row.dataset;
    present[slot] = 1;
    for (std::size_t m = 0; m < n_metrics; ++m) {
      const double v = row.values[column_of[m]];
      cells[slot][m] =
          config.metrics[m].lower_is_better && !std::isnan(v) ? -v : v;
    }
  }

  for (std::size_t m = 0; m < n_metrics; ++m) {
    const auto& mc = config.metrics[m];

    auto transform_group = [&](const std::vector<std::size_t>& slots) {
      std::vector<double> pool;
      for (std::size_t slot : slots)
        if (!std::isnan(cells[slot][m])) pool.push_back(cells[slot][m]);
      if (pool.empty()) return;
      switch (mc.transform) {
        case Transform::None:
          for (std::size_t slot : slots) {
            double& v = cells[slot][m];
            if (!std::isnan(v) && mc.lower_is_better) v = 1.0 - (-v);
          }
          break;
        case Transform::MinMax: {
          const auto [lo_it, hi_it] = std::minmax_element(pool.begin(), pool.end());
          const double lo = *lo_it, hi = *hi_it;
          if (hi - lo <= 0.0) {
            out.warnings.push_back("metric " + mc.name +
                                   " is constant; min-max maps it to 0.5");
            for (std::size_t slot : slots)
              if (!std::isnan(cells[slot][m])) cells[slot][m] = 0.5;
          } else {
            for (std::size_t slot : slots) {
              double& v = cells[slot][m];
              if (!std::isnan(v)) v = (v - lo) / (hi - lo);
            }
          }
          break;
        }
        case Transform::Decile: {
          std::vector<double> sorted = pool;
          std::sort(sorted.begin(), sorted.end());
          const std::size_t count = sorted.size();
          const std::size_t bins = static_cast<std::size_t>(mc.bins);
          for (std::size_t slot : slots) {
            double& v = cells[slot][m];
            if (std::isnan(v)) continue;
            const std::size_t at_or_below = static_cast<std::size_t>(
                std::upper_bound(sorted.begin(), sorted.end(), v) -
                sorted.begin());
            std::size_t bin = (at_or_below * bins + count - 1) / count;
            bin = std::clamp<std::size_t>(bin, 1, bins);
            v = (2.0 * static_cast<double>(bin) - 1.0) /
                (2.0 * static_cast<double>(bins));
          }
          break;
        }
      }
    };

    if (config.per_dataset_bins && mc.transform == Transform::Decile) {
      for (std::size_t d = 0; d < n_datasets; ++d) {
        std::vector<std::size_t> slots;
        for (std::size_t c = 0; c < n_classifiers; ++c)
          slots.push_back(c * n_datasets + d);
        transform_group(slots);
      }
    } else {
      std::vector<std::size_t> slots(n_classifiers * n_datasets);
      for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
      transform_group(slots);
    }
  }

  out.table.classifiers = raw.classifiers;
  out.table.datasets = raw.datasets;
  for (const auto& mc : config.metrics)
    out.table.scale.metrics.push_back({mc.name, mc.scale});
  out.table.values.assign(n_classifiers * n_datasets, {});
  for (std::size_t c = 0; c < n_classifiers; ++c) {
    for (std::size_t d = 0; d < n_datasets; ++d) {
      const std::size_t slot = c * n_datasets + d;
      if (!present[slot]) continue;  // stays empty, flagged by validation
      EvaluationPoint p(n_metrics, 0.0);
      bool complete = true;
      for (std::size_t m = 0; m < n_metrics; ++m) {
        if (std::isnan(cells[slot][m])) {
          out.violations.push_back("missing value for metric " +
                                   config.metrics[m].name + " at (" +
                                   raw.classifiers[c] + ", " + raw.datasets[d] +
                                   ")");
          complete = false;
        } else {
          p[m] = round_to(cells[slot][m], config.rounding_decimals);
        }
      }
      if (complete) out.table.values[slot] = std::move(p);
    }
  }

  for (auto& issue : validate_table(out.table)) out.violations.push_back(issue);
  return out;
}

PerformanceTable ingest_or_throw(const RawTable& raw,
                                 const AnalysisConfig& config) {
  IngestResult r = ingest(raw, config);
  if (!r.violations.empty()) {
    std::string msg = "input rejected:";
    for (const auto& v : r.violations) msg += "\n  " + v;
    throw DataError(msg);
  }
  return std::move(r.table);
}

std::string write_table_csv(const PerformanceTable& table) {
  std::string out = "dataset,classifier";
  for (const auto& m : table.scale.metrics) out += "," + csv_quote(m.name);
  out += '\n';
  for (std::size_t d = 0; d < table.datasets.size(); ++d) {
    for (std::size_t c = 0; c < table.classifiers.size(); ++c) {
      out += csv_quote(table.datasets[d]);
      out += ',';
      out += csv_quote(table.classifiers[c]);
      for (double v : table.at(c, d)) {
        out += ',';
        out += format_double(v);
      }
      out += '\n';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fetch

std::string fetch_csv(const std::string& url, const FetchOptions& options) {
  static const std::regex pattern(R"(^(https?)://([^/:]+)(?::(\d+))?(/.*)?$)");
  std::smatch parts;
  if (!std::regex_match(url, parts, pattern))
    throw FetchError("unsupported url: " + url);
  const std::string scheme = parts[1];
  const std::string host = parts[2];
  const std::string path = parts[4].matched ? parts[4].str() : "/";
  int port = parts[3].matched ? std::stoi(parts[3]) : (scheme == "https" ? 443 : 80);
#if !defined(CPPHTTPLIB_OPENSSL_SUPPORT)
  if (scheme == "https")
    throw FetchError("built without https support, cannot fetch " + url);
#endif

  httplib::Error last_error = httplib::Error::Success;
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    httplib::Client client(scheme + "://" + host + ":" + std::to_string(port));
    client.set_connection_timeout(options.timeout_seconds, 0);
    client.set_read_timeout(options.timeout_seconds, 0);
    client.set_follow_location(true);

    std::string body;
    bool over_cap = false;
    auto result = client.Get(path, [&](const char* data, std::size_t len) {
      if (body.size() + len > options.max_bytes) {
        over_cap = true;
        return false;
      }
      body.append(data, len);
      return true;
    });

    if (over_cap)
      throw CapExceededError("response for " + url + " exceeds the " +
                             std::to_string(options.max_bytes) + " byte cap");
    if (!result) {
      last_error = result.error();
      if (last_error == httplib::Error::ConnectionTimeout ||
          last_error == httplib::Error::Read ||
          last_error == httplib::Error::Write) {
        if (attempt < options.retries) continue;
        throw TimeoutError("timed out fetching " + url);
      }
      if (attempt < options.retries) continue;
      throw FetchError("transport failure fetching " + url + ": " +
                       httplib::to_string(last_error));
    }
    if (result->status == 404)
      throw NotFoundError("not found: " + url);
    if (result->status != 200)
      throw HttpStatusError("unexpected status " +
                                std::to_string(result->status) + " for " + url,
                            result->status);
    return body;
  }
  throw FetchError("transport failure fetching " + url + ": " +
                   httplib::to_string(last_error));
}

// ---------------------------------------------------------------------------
// Population model files

PopulationModel parse_model(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("model is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("model must be a JSON object");
  PopulationModel model;
  for (const auto& [key, value] : j.items()) {
    if (key == "version") {
      if (!value.is_number_integer() || value.get<int>() != 1)
        throw DataError("model: unsupported version (expected 1)");
    } else if (key == "classifiers") {
      for (const auto& name : value)
        model.classifiers.push_back(name.get<std::string>());
    } else if (key == "metrics") {
      for (const auto& mj : value) {
        const std::string scale = mj.at("scale").get<std::string>();
        if (scale != "cardinal" && scale != "ordinal")
          throw DataError("model: metric scale must be cardinal or ordinal");
        model.scale.metrics.push_back(
            {mj.at("name").get<std::string>(),
             scale == "cardinal" ? Scale::Cardinal : Scale::Ordinal});
      }
    } else if (key == "probabilities") {
      for (const auto& p : value) model.probabilities.push_back(p.get<double>());
    } else if (key == "types") {
      for (const auto& tj : value) {
        if (!tj.is_object())
          throw DataError("model: each type must map classifiers to points");
        model.types.emplace_back();
      }
    } else {
      throw DataError("model: unknown key " + key);
    }
  }
  // Fill type profiles now that the classifier list is known.
  if (j.contains("types")) {
    std::size_t t = 0;
    for (const auto& tj : j["types"]) {
      auto& profile = model.types[t++];
      profile.resize(model.classifiers.size());
      for (const auto& [who, point] : tj.items()) {
        auto it = std::find(model.classifiers.begin(), model.classifiers.end(),
                            who);
        if (it == model.classifiers.end())
          throw DataError("model: type lists unknown classifier " + who);
        EvaluationPoint p;
        for (const auto& v : point) p.push_back(v.get<double>());
        profile[static_cast<std::size_t>(it - model.classifiers.begin())] =
            std::move(p);
      }
      for (std::size_t c = 0; c < model.classifiers.size(); ++c)
        if (profile[c].empty())
          throw DataError("model: type " + std::to_string(t - 1) +
                          " misses classifier " + model.classifiers[c]);
    }
  }
  auto issues = validate_model(model);
  if (!issues.empty()) throw DataError("invalid model: " + issues.front());
  return model;
}

PopulationModel load_model(const std::string& path) {
  return parse_model(read_text_file(path));
}

std::string model_to_json(const PopulationModel& model) {
  ordered_json j;
  j["version"] = 1;
  j["classifiers"] = model.classifiers;
  j["metrics"] = ordered_json::array();
  for (const auto& m : model.scale.metrics)
    j["metrics"].push_back(
        {{"name", m.name},
         {"scale", m.scale == Scale::Cardinal ? "cardinal" : "ordinal"}});
  j["probabilities"] = model.probabilities;
  j["types"] = ordered_json::array();
  for (const auto& type : model.types) {
    ordered_json tj;
    for (std::size_t c = 0; c < model.classifiers.size(); ++c)
      tj[model.classifiers[c]] = type[c];
    j["types"].push_back(tj);
  }
  return render_json(j);
}

// ---------------------------------------------------------------------------
// Report fragments

namespace {

ordered_json name_list(const std::vector<std::size_t>& indices,
                       const std::vector<std::string>& names) {
  ordered_json out = ordered_json::array();
  for (std::size_t i : indices) out.push_back(names[i]);
  return out;
}

}  // namespace

ordered_json table_summary_json(const PerformanceTable& table) {
  ordered_json j;
  j["classifiers"] = table.classifiers;
  j["n_datasets"] = table.datasets.size();
  j["metrics"] = ordered_json::array();
  for (const auto& m : table.scale.metrics)
    j["metrics"].push_back(
        {{"name", m.name},
         {"scale", m.scale == Scale::Cardinal ? "cardinal" : "ordinal"}});
  return j;
}

ordered_json matrix_json(const DominanceMatrix& matrix) {
  ordered_json j;
  j["classifiers"] = matrix.classifiers;
  j["delta"] = matrix.delta;
  ordered_json rows = ordered_json::array();
  const std::size_t k = matrix.classifiers.size();
  for (std::size_t i = 0; i < k; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t jj = 0; jj < k; ++jj) row.push_back(matrix.at(i, jj));
    rows.push_back(row);
  }
  j["values"] = rows;
  return j;
}

ordered_json front_json(const FrontResult& front,
                        const std::vector<std::string>& names) {
  ordered_json j;
  switch (front.kind) {
    case FrontKind::Empirical: j["kind"] = "empirical"; break;
    case FrontKind::Pareto: j["kind"] = "pareto"; break;
    case FrontKind::Population: j["kind"] = "population"; break;
  }
  j["epsilon"] = front.epsilon;
  j["members"] = name_list(front.members, names);
  return j;
}

ordered_json pairwise_test_json(const PairwiseTestResult& result,
                                const std::vector<std::string>& names) {
  ordered_json j;
  j["candidate"] = names[result.candidate];
  j["target"] = names[result.target];
  j["alpha"] = result.alpha;
  j["n_resamples"] = result.resampled.size();
  j["observed"] = result.observed;
  j["p_value"] = result.p_value;
  if (result.level_too_small) j["critical_value"] = nullptr;
  else j["critical_value"] = result.critical_value;
  j["rank_cutoff"] = result.rank_cutoff;
  j["reject"] = result.reject;
  j["level_too_small"] = result.level_too_small;
  return j;
}

ordered_json static_test_json(const MultiTestResult& result,
                              const std::vector<std::string>& names) {
  ordered_json j;
  j["mode"] = "static";
  j["target"] = names[result.target];
  j["alpha"] = result.alpha;
  ordered_json pw = ordered_json::array();
  for (const auto& p : result.pairwise) pw.push_back(pairwise_test_json(p, names));
  j["pairwise"] = pw;
  j["null_hypothesis"] = "some competitor weakly dominates the target";
  j["reject"] = result.reject;
  return j;
}

ordered_json dynamic_test_json(const SelectionTestResult& result,
                               const std::vector<std::string>& names) {
  ordered_json j;
  j["mode"] = "dynamic";
  j["target"] = names[result.target];
  j["alpha"] = result.alpha;
  j["pairwise_level"] = result.pairwise_level;
  ordered_json pw = ordered_json::array();
  for (const auto& p : result.pairwise) pw.push_back(pairwise_test_json(p, names));
  j["pairwise"] = pw;
  j["refuted_dominators"] = name_list(result.rejected, names);
  return j;
}

ordered_json robustness_json(const RobustnessReport& report,
                             const std::vector<std::string>& names) {
  ordered_json j;
  j["target"] = names[report.target];
  j["sample_size"] = report.sample_size;
  j["k_max"] = report.k_max;
  ordered_json pw = ordered_json::array();
  for (const auto& curve : report.pairwise) {
    ordered_json cj;
    cj["candidate"] = names[curve.candidate];
    cj["observed"] = curve.observed;
    cj["p_by_k"] = curve.p_by_k;
    pw.push_back(cj);
  }
  j["pairwise"] = pw;
  j["aggregate_p_by_k"] = report.aggregate;
  return j;
}

ordered_json marginal_front_json(const MarginalFrontResult& result,
                                 const PerformanceTable& table) {
  ordered_json j;
  j["alpha"] = result.alpha;
  ordered_json metrics = ordered_json::array();
  for (std::size_t m = 0; m < result.friedman.size(); ++m) {
    const auto& fr = result.friedman[m];
    const auto& cmp = result.pairwise[m];
    ordered_json mj;
    mj["metric"] = table.scale.metrics[m].name;
    ordered_json fj;
    fj["statistic"] = fr.statistic;
    fj["degrees_of_freedom"] = fr.degrees_of_freedom;
    fj["p_value"] = fr.p_value;
    fj["degenerate"] = fr.degenerate;
    fj["rejected"] = static_cast<bool>(result.friedman_rejected[m]);
    mj["friedman"] = fj;
    ordered_json ranks;
    for (std::size_t c = 0; c < table.classifiers.size(); ++c)
      ranks[table.classifiers[c]] = fr.mean_ranks[c];
    mj["mean_ranks"] = ranks;
    mj["critical_difference"] = cmp.critical_difference;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : cmp.pairs) {
      ordered_json pj;
      pj["a"] = table.classifiers[p.a];
      pj["b"] = table.classifiers[p.b];
      pj["rank_difference"] = p.rank_difference;
      pj["q_statistic"] = p.q_statistic;
      pj["p_value"] = p.p_value;
      pj["significant"] = p.significant;
      pairs.push_back(pj);
    }
    mj["pairs"] = pairs;
    metrics.push_back(mj);
  }
  j["metrics"] = metrics;
  j["front"] = name_list(result.front, table.classifiers);
  return j;
}

ordered_json experiment_json(const ExperimentReport& report) {
  ordered_json j;
  j["s_grid"] = report.s_grid;
  j["runs"] = report.runs;
  j["epsilon_scale"] = report.epsilon_c;
  j["seed"] = report.seed;
  ordered_json summary = ordered_json::array();
  for (const auto& row : report.summary) {
    ordered_json sj;
    sj["sample_size"] = row.sample_size;
    sj["recovery_rate"] = row.recovery_rate;
    sj["superset_rate"] = row.superset_rate;
    summary.push_back(sj);
  }
  j["summary"] = summary;
  return j;
}

std::string render_json(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string experiment_rows_csv(const ExperimentReport& report) {
  std::string out = std::string("# ") + kToolVersion + "\n";
  out += "s,run,recovered,superset\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.sample_size);
    out += ',';
    out += std::to_string(row.run);
    out += ',';
    out += row.recovered ? '1' : '0';
    out += ',';
    out += row.superset ? '1' : '0';
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Files

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw DataError("cannot write " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace gsdbench
