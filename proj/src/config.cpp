#include "config.hpp"

#include <fstream>
#include <sstream>

namespace tre {

namespace {

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("config key '" + key + "': expected boolean, got '" + v + "'");
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos;
    long out = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': expected integer, got '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos;
    double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': expected number, got '" + v + "'");
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);

  RunConfig cfg;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos)
      throw UsageError(path + ":" + std::to_string(line_no) +
                       ": expected key = value");
    std::string key(trim(t.substr(0, eq)));
    std::string val(trim(t.substr(eq + 1)));

    if (key == "corpus") cfg.corpus_paths.push_back(val);
    else if (key == "noun_lexicon") cfg.noun_lexicon_path = val;
    else if (key == "reporting_lexicon") cfg.reporting_lexicon_path = val;
    else if (key == "embeddings") cfg.embeddings_path = val;
    else if (key == "gold") cfg.gold_path = val;
    else if (key == "context") {
      if (val == "window") cfg.context.kind = ContextKind::Window;
      else if (val == "deppath") cfg.context.kind = ContextKind::DepPath;
      else throw UsageError("config key 'context': expected window|deppath");
    } else if (key == "pattern_mode") {
      if (val == "collapsed") cfg.mining.mode = PatternMode::Collapsed;
      else if (val == "composite") cfg.mining.mode = PatternMode::Composite;
      else throw UsageError("config key 'pattern_mode': expected collapsed|composite");
    } else if (key == "generalize") {
      bool g = parse_bool(key, val);
      cfg.mining.generalize = g;
      cfg.context.generalize = g;
    }
    else if (key == "cooccur_min") cfg.mining.cooccur_min = parse_long(key, val);
    else if (key == "pattern_min") cfg.mining.pattern_min = parse_long(key, val);
    else if (key == "dominance") cfg.mining.dominance = parse_double(key, val);
    else if (key == "seed_min") cfg.mining.seed_min = parse_long(key, val);
    else if (key == "max_gap") {
      cfg.mining.max_gap = static_cast<int>(parse_long(key, val));
      cfg.context.max_gap = cfg.mining.max_gap;
    }
    else if (key == "context_window") cfg.context.window = static_cast<int>(parse_long(key, val));
    else if (key == "context_max_len") cfg.context.max_len = static_cast<int>(parse_long(key, val));
    else if (key == "majority") cfg.bootstrap.majority = parse_double(key, val);
    else if (key == "base_support") cfg.bootstrap.base_support = parse_long(key, val);
    else if (key == "support_step") cfg.bootstrap.support_step = parse_long(key, val);
    else if (key == "diff_ratio") cfg.bootstrap.diff_ratio = parse_double(key, val);
    else if (key == "stop_threshold") cfg.bootstrap.stop_threshold = parse_long(key, val);
    else if (key == "max_iterations") cfg.bootstrap.max_iterations = static_cast<int>(parse_long(key, val));
    else if (key == "negative_ratio") cfg.bootstrap.negative_ratio = parse_long(key, val);
    else if (key == "vote_min_confidence") cfg.bootstrap.vote_min_confidence = parse_double(key, val);
    else if (key == "dim") cfg.model.dim = static_cast<int>(parse_long(key, val));
    else if (key == "n_filters") cfg.model.n_filters = static_cast<int>(parse_long(key, val));
    else if (key == "filter_window") cfg.model.window = static_cast<int>(parse_long(key, val));
    else if (key == "minibatch") cfg.train.minibatch = static_cast<int>(parse_long(key, val));
    else if (key == "dropout") cfg.train.dropout = parse_double(key, val);
    else if (key == "epochs") cfg.train.epochs = static_cast<int>(parse_long(key, val));
    else if (key == "val_fraction") cfg.train.val_fraction = parse_double(key, val);
    else if (key == "rho") cfg.train.rho = parse_double(key, val);
    else if (key == "eps") cfg.train.eps = parse_double(key, val);
    else if (key == "init_scale") cfg.train.init_scale = parse_double(key, val);
    else if (key == "rng_seed") cfg.apply_seed(static_cast<std::uint64_t>(parse_long(key, val)));
    else if (key == "threads") cfg.threads = static_cast<int>(parse_long(key, val));
    else if (key == "sample_min_confidence") cfg.sample_min_confidence = parse_double(key, val);
    else if (key == "sample_n") cfg.sample_n = parse_long(key, val);
    else if (key == "graph_source") cfg.graph_source = val;
    else if (key == "model_file") cfg.model_file = val;
    else throw UsageError("unknown config key '" + key + "' at " + path + ":" +
                          std::to_string(line_no));
  }

  if (cfg.train.dropout <= 0.0 || cfg.train.dropout >= 1.0)
    throw UsageError("dropout must be in (0, 1)");
  if (cfg.train.val_fraction <= 0.0 || cfg.train.val_fraction >= 1.0)
    throw UsageError("val_fraction must be in (0, 1)");
  return cfg;
}

std::string dump_run_config(const RunConfig& cfg) {
  std::ostringstream out;
  for (const auto& p : cfg.corpus_paths) out << "corpus = " << p << "\n";
  if (!cfg.noun_lexicon_path.empty())
    out << "noun_lexicon = " << cfg.noun_lexicon_path << "\n";
  if (!cfg.reporting_lexicon_path.empty())
    out << "reporting_lexicon = " << cfg.reporting_lexicon_path << "\n";
  if (!cfg.embeddings_path.empty())
    out << "embeddings = " << cfg.embeddings_path << "\n";
  if (!cfg.gold_path.empty()) out << "gold = " << cfg.gold_path << "\n";
  out << "context = "
      << (cfg.context.kind == ContextKind::Window ? "window" : "deppath") << "\n";
  out << "pattern_mode = "
      << (cfg.mining.mode == PatternMode::Collapsed ? "collapsed" : "composite")
      << "\n";
  out << "generalize = " << (cfg.mining.generalize ? "true" : "false") << "\n";
  out << "cooccur_min = " << cfg.mining.cooccur_min << "\n";
  out << "pattern_min = " << cfg.mining.pattern_min << "\n";
  out << "dominance = " << cfg.mining.dominance << "\n";
  out << "seed_min = " << cfg.mining.seed_min << "\n";
  out << "max_gap = " << cfg.mining.max_gap << "\n";
  out << "context_window = " << cfg.context.window << "\n";
  out << "context_max_len = " << cfg.context.max_len << "\n";
  out << "majority = " << cfg.bootstrap.majority << "\n";
  out << "base_support = " << cfg.bootstrap.base_support << "\n";
  out << "support_step = " << cfg.bootstrap.support_step << "\n";
  out << "diff_ratio = " << cfg.bootstrap.diff_ratio << "\n";
  out << "stop_threshold = " << cfg.bootstrap.stop_threshold << "\n";
  out << "max_iterations = " << cfg.bootstrap.max_iterations << "\n";
  out << "negative_ratio = " << cfg.bootstrap.negative_ratio << "\n";
  out << "vote_min_confidence = " << cfg.bootstrap.vote_min_confidence << "\n";
  out << "dim = " << cfg.model.dim << "\n";
  out << "n_filters = " << cfg.model.n_filters << "\n";
  out << "filter_window = " << cfg.model.window << "\n";
  out << "minibatch = " << cfg.train.minibatch << "\n";
  out << "dropout = " << cfg.train.dropout << "\n";
  out << "epochs = " << cfg.train.epochs << "\n";
  out << "val_fraction = " << cfg.train.val_fraction << "\n";
  out << "rho = " << cfg.train.rho << "\n";
  out << "eps = " << cfg.train.eps << "\n";
  out << "init_scale = " << cfg.train.init_scale << "\n";
  out << "rng_seed = " << cfg.rng_seed << "\n";
  out << "threads = " << cfg.threads << "\n";
  out << "sample_min_confidence = " << cfg.sample_min_confidence << "\n";
  out << "sample_n = " << cfg.sample_n << "\n";
  out << "graph_source = " << cfg.graph_source << "\n";
  out << "model_file = " << cfg.model_file << "\n";
  return out.str();
}

}  // namespace tre
