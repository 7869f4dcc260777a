//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/cli.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "chemeval/combined.h"
#include "chemeval/corpus.h"
#include "chemeval/detection.h"
#include "chemeval/fixture.h"
#include "chemeval/reaction.h"

namespace chemeval::cli {
namespace {
using nlohmann::ordered_json;
namespace fs = std::filesystem;

class InputError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string gt;
  std::string pred;
  std::string out;
  std::string format = "json";
  double tau = 0.5;
  std::string mode = "both";
  std::uint64_t seed = 42;
  FixtureParams fixture;
};

spdlog::logger &log() {
  static const std::shared_ptr<spdlog::logger> logger = [] {
    auto sink = std::make_shared<spdlog::sinks::stderr_sink_st>();
    auto l = std::make_shared<spdlog::logger>("chemeval", sink);
    l->set_pattern("[%l] %v");
    return l;
  }();
  return *logger;
}

void configure_logging() {
  const char *env = std::getenv("CHEMEVAL_LOG");
  log().set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

std::string sha256_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CorpusError(CorpusErrorKind::kIo, "", "", "cannot open " + path);

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(
      EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 unavailable");
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    if (in.gcount() > 0)
      EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);

  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof(byte), "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

ordered_json metadata(const std::string &command,
                      const std::vector<std::pair<std::string, std::string>>
                          &inputs,
                      ordered_json parameters) {
  ordered_json digests = ordered_json::object();
  for (const auto &[name, path]: inputs)
    digests[name] = { { "sha256", sha256_file(path) } };
  return { { "tool", "chemeval" },
           { "version", std::string(kVersion) },
           { "command", command },
           { "inputs", std::move(digests) },
           { "parameters", std::move(parameters) } };
}

void emit(const std::string &text, const std::string &out) {
  if (out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file)
    throw InputError("cannot write " + out);
  file << text;
  if (!file.flush())
    throw InputError("cannot write " + out);
  log().info("wrote {}", out);
}

void emit(const ordered_json &report, const std::string &out) {
  emit(report.dump(2) + "\n", out);
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c: s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(const ordered_json &v) {
  if (v.is_null())
    return "";
  if (v.is_number_integer() || v.is_number_unsigned())
    return v.dump();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v.get<double>());
  return buf;
}

// Flattens rows of {"dataset": ..., <columns>} into CSV.
std::string to_csv(const std::vector<std::string> &columns,
                   const std::vector<ordered_json> &rows) {
  std::ostringstream out;
  out << "dataset";
  for (const std::string &c: columns)
    out << ',' << c;
  out << '\n';
  for (const ordered_json &row: rows) {
    out << csv_field(row.at("dataset").get<std::string>());
    for (const std::string &c: columns) {
      const ordered_json *v = &row;
      std::string_view path = c;
      // "soft.f1" reaches into nested blocks.
      while (!path.empty()) {
        const auto dot = path.find('.');
        const std::string key(path.substr(0, dot));
        v = &v->at(key);
        path = dot == std::string_view::npos ? "" : path.substr(dot + 1);
      }
      out << ',' << csv_number(*v);
    }
    out << '\n';
  }
  return out.str();
}

struct Loaded {
  GroundTruth gt;
  Predictions pred;
  std::vector<AlignedPage> pages;
  // Label -> positions in `pages`; labels sorted.
  std::map<std::string, std::vector<std::size_t>> labels;
};

// Loaded is returned by pointer so the aligned page pointers stay valid.
std::unique_ptr<Loaded> load_pair(const Options &opts) {
  auto loaded = std::make_unique<Loaded>();
  log().debug("loading {}", opts.gt);
  loaded->gt = load_ground_truth(opts.gt);
  log().debug("loading {}", opts.pred);
  loaded->pred = load_predictions(opts.pred);
  loaded->pages = align_pages(loaded->gt, loaded->pred);
  for (std::size_t i = 0; i < loaded->pages.size(); ++i)
    loaded->labels[loaded->gt.label(*loaded->pages[i].gt)].push_back(i);
  log().info("{} aligned pages", loaded->pages.size());
  return loaded;
}

ordered_json prf_json(const CombinedCounts &c) {
  const PrecisionRecall pr = precision_recall(c);
  return { { "tp", c.tp },
           { "fp", c.fp },
           { "fn", c.fn },
           { "precision", pr.precision },
           { "recall", pr.recall },
           { "f1", pr.f1 } };
}

template <typename T>
std::vector<T> select(const std::vector<T> &all,
                      const std::vector<std::size_t> &indices) {
  std::vector<T> out;
  out.reserve(indices.size());
  for (std::size_t i: indices)
    out.push_back(all[i]);
  return out;
}

// detect

ordered_json detection_block(const std::vector<DetectionPage> &pages,
                             const std::vector<CombinedCounts> &at50) {
  long n_gt = 0, n_pred = 0;
  CombinedCounts counts;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    n_gt += static_cast<long>(pages[i].gts.size());
    n_pred += static_cast<long>(pages[i].preds.size());
    counts += at50[i];
  }
  ordered_json block { { "n_pages", pages.size() },
                       { "n_gt", n_gt },
                       { "n_pred", n_pred } };
  if (n_gt == 0) {
    block["ap"] = nullptr;
    block["ar"] = nullptr;
    block["f1"] = nullptr;
  } else {
    const auto ap = coco_ap_per_threshold(pages);
    const auto ar = coco_ar_per_threshold(pages);
    const double ap_mean = coco_ap(pages);
    const double ar_mean = coco_ar(pages);
    block["ap"] = ap_mean;
    block["ar"] = ar_mean;
    block["f1"] = f1(ap_mean, ar_mean);
    block["ap_per_threshold"] = ap;
    block["ar_per_threshold"] = ar;
  }
  block["iou_0.50"] = prf_json(counts);
  return block;
}

int cmd_detect(const Options &opts) {
  const auto loaded = load_pair(opts);
  std::vector<DetectionPage> pages;
  std::vector<CombinedCounts> at50;
  ordered_json rows = ordered_json::array();
  long n_gt = 0;
  for (const AlignedPage &ap: loaded->pages) {
    DetectionPage page;
    std::vector<KeyedBox> keyed_gt;
    std::vector<ScoredKeyedBox> keyed_pred;
    for (const GtMolecule &m: ap.gt->molecules) {
      page.gts.push_back(m.bbox);
      keyed_gt.push_back({ m.bbox, "" });
    }
    for (const PredMolecule &m: ap.pred->molecules) {
      page.preds.push_back(m.box);
      keyed_pred.push_back({ m.box, "" });
    }
    const CombinedCounts c = detection_counts(keyed_gt, keyed_pred, 0.5);
    n_gt += static_cast<long>(page.gts.size());
    rows.push_back({ { "page_id", ap.gt->page_id },
                     { "dataset", loaded->gt.label(*ap.gt) },
                     { "n_gt", page.gts.size() },
                     { "n_pred", page.preds.size() },
                     { "tp_iou_0.50", c.tp } });
    pages.push_back(std::move(page));
    at50.push_back(c);
  }
  if (n_gt == 0)
    throw UndefinedMetricError(
        "detection metrics are undefined without ground-truth molecules");

  std::vector<ordered_json> label_rows;
  ordered_json datasets = ordered_json::array();
  for (const auto &[label, idx]: loaded->labels) {
    ordered_json block { { "dataset", label } };
    block.update(detection_block(select(pages, idx), select(at50, idx)));
    datasets.push_back(block);
    label_rows.push_back(block);
  }
  ordered_json overall { { "dataset", "overall" } };
  overall.update(detection_block(pages, at50));
  label_rows.push_back(overall);

  if (opts.format == "csv") {
    emit(to_csv({ "n_pages", "n_gt", "n_pred", "ap", "ar", "f1" }, label_rows),
         opts.out);
    return kSuccess;
  }
  overall.erase("dataset");
  ordered_json report {
    { "metadata",
      metadata("detect", { { "gt", opts.gt }, { "pred", opts.pred } },
               { { "iou_thresholds", kCocoIouThresholds } }) },
    { "overall", std::move(overall) },
    { "datasets", std::move(datasets) },
    { "pages", std::move(rows) },
  };
  emit(report, opts.out);
  return kSuccess;
}

// convert

int cmd_convert(const Options &opts) {
  const auto loaded = load_pair(opts);

  std::vector<ConversionPair> pairs;
  std::vector<bool> matched;
  std::vector<std::size_t> pair_page;
  ordered_json rows = ordered_json::array();
  ordered_json mismatches = ordered_json::array();
  long unaligned = 0;

  for (std::size_t pi = 0; pi < loaded->pages.size(); ++pi) {
    const AlignedPage &ap = loaded->pages[pi];
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < ap.gt->molecules.size(); ++i)
      index.emplace(ap.gt->molecules[i].id, i);

    std::vector<const PredMolecule *> by_gt(ap.gt->molecules.size(), nullptr);
    for (const PredMolecule &m: ap.pred->molecules) {
      if (!m.id) {
        ++unaligned;
        continue;
      }
      auto it = index.find(*m.id);
      if (it == index.end())
        throw CorpusError(CorpusErrorKind::kUnresolvedReference,
                          ap.gt->page_id, "prediction " + *m.id,
                          "no ground-truth molecule with this id");
      by_gt[it->second] = &m;
    }

    long page_matches = 0;
    for (std::size_t i = 0; i < ap.gt->molecules.size(); ++i) {
      const GtMolecule &gm = ap.gt->molecules[i];
      ConversionPair pair { gm.structure, std::nullopt };
      std::string pred_key = "<missing>";
      std::string diagnostic;
      if (by_gt[i]) {
        ResolvedStructure rs = resolve_structure(by_gt[i]->format,
                                                 by_gt[i]->structure);
        pred_key = rs.key;
        diagnostic = rs.diagnostic;
        pair.pred = std::move(rs.molecule);
      }
      const bool ok = keys_match(gm.key, pred_key);
      page_matches += ok;
      if (!ok) {
        ordered_json item { { "page_id", ap.gt->page_id },
                            { "id", gm.id },
                            { "gt_key", gm.key },
                            { "pred_key", pred_key } };
        if (!diagnostic.empty())
          item["diagnostic"] = diagnostic;
        mismatches.push_back(std::move(item));
      }
      pairs.push_back(std::move(pair));
      matched.push_back(ok);
      pair_page.push_back(pi);
    }
    rows.push_back({ { "page_id", ap.gt->page_id },
                     { "dataset", loaded->gt.label(*ap.gt) },
                     { "pairs", ap.gt->molecules.size() },
                     { "matches", page_matches } });
  }
  if (pairs.empty())
    throw UndefinedMetricError(
        "conversion accuracy is undefined without ground-truth molecules");

  auto block = [&](const std::vector<std::size_t> &page_idx) {
    std::vector<ConversionPair> subset;
    long m = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (std::find(page_idx.begin(), page_idx.end(), pair_page[i])
          == page_idx.end())
        continue;
      subset.push_back(pairs[i]);
      m += matched[i];
    }
    ordered_json out { { "pairs", subset.size() }, { "matches", m } };
    if (subset.empty()) {
      out["smiles_match_rate"] = nullptr;
      out["mean_tanimoto"] = nullptr;
    } else {
      const ConversionAccuracy acc = conversion_accuracy(subset);
      out["smiles_match_rate"] = acc.smiles_match_rate;
      out["mean_tanimoto"] = acc.mean_tanimoto;
    }
    return out;
  };

  std::vector<ordered_json> label_rows;
  ordered_json datasets = ordered_json::array();
  for (const auto &[label, idx]: loaded->labels) {
    ordered_json b { { "dataset", label } };
    b.update(block(idx));
    datasets.push_back(b);
    label_rows.push_back(b);
  }
  std::vector<std::size_t> all(loaded->pages.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = i;
  ordered_json overall { { "dataset", "overall" } };
  overall.update(block(all));
  label_rows.push_back(overall);

  if (opts.format == "csv") {
    emit(to_csv({ "pairs", "matches", "smiles_match_rate", "mean_tanimoto" },
                label_rows),
         opts.out);
    return kSuccess;
  }
  overall.erase("dataset");
  overall["unaligned_predictions"] = unaligned;
  ordered_json report {
    { "metadata",
      metadata("convert", { { "gt", opts.gt }, { "pred", opts.pred } },
               ordered_json::object()) },
    { "overall", std::move(overall) },
    { "datasets", std::move(datasets) },
    { "pages", std::move(rows) },
    { "mismatches", std::move(mismatches) },
  };
  emit(report, opts.out);
  return kSuccess;
}

// combined

int cmd_combined(const Options &opts) {
  if (!(opts.tau > 0.0 && opts.tau <= 1.0))
    throw InputError("--tau must lie in (0, 1]");
  const auto loaded = load_pair(opts);

  std::vector<CombinedPage> pages;
  std::vector<std::vector<std::string>> diagnostics;
  for (const AlignedPage &ap: loaded->pages) {
    CombinedPage page;
    for (const GtMolecule &m: ap.gt->molecules)
      page.gts.push_back({ m.bbox, m.key });
    std::vector<std::string> diag;
    for (const PredMolecule &m: ap.pred->molecules) {
      ResolvedStructure rs = resolve_structure(m.format, m.structure);
      if (!rs.valid())
        log().debug("page {}: invalid structure: {}", ap.gt->page_id,
                    rs.diagnostic);
      page.preds.push_back({ m.box, rs.key });
      diag.push_back(rs.diagnostic);
    }
    pages.push_back(std::move(page));
    diagnostics.push_back(std::move(diag));
  }

  const CombinedReport report = combined_prf(pages, opts.tau);

  ordered_json rows = ordered_json::array();
  ordered_json fps = ordered_json::array();
  ordered_json fns = ordered_json::array();
  CombinedCounts detection_total;
  for (std::size_t pi = 0; pi < pages.size(); ++pi) {
    const AlignedPage &ap = loaded->pages[pi];
    const CombinedPage &page = pages[pi];
    const CombinedMatch &match = report.pages[pi];
    rows.push_back({ { "page_id", ap.gt->page_id },
                     { "dataset", loaded->gt.label(*ap.gt) },
                     { "tp", match.counts.tp },
                     { "fp", match.counts.fp },
                     { "fn", match.counts.fn } });
    detection_total += detection_counts(page.gts, page.preds, opts.tau);

    std::vector<bool> gt_hit(page.gts.size()), pred_hit(page.preds.size());
    for (const auto &[g, p]: match.true_positives) {
      gt_hit[g] = true;
      pred_hit[p] = true;
    }
    auto overlaps = [&](const BBox &a, const BBox &b) {
      return iou(a, b) >= opts.tau;
    };
    for (std::size_t g = 0; g < page.gts.size(); ++g) {
      if (gt_hit[g])
        continue;
      bool boxed = false;
      for (const auto &p: page.preds)
        boxed = boxed || overlaps(page.gts[g].bbox, p.box.bbox);
      fns.push_back({ { "page_id", ap.gt->page_id },
                      { "id", ap.gt->molecules[g].id },
                      { "reason",
                        boxed ? "structure mismatch" : "not detected" } });
    }
    for (std::size_t p = 0; p < page.preds.size(); ++p) {
      if (pred_hit[p])
        continue;
      const PredMolecule &pm = ap.pred->molecules[p];
      std::string reason = "no overlapping ground truth";
      if (page.preds[p].key == kInvalidKey) {
        reason = "invalid structure: " + diagnostics[pi][p];
      } else {
        for (const auto &g: page.gts) {
          if (overlaps(g.bbox, page.preds[p].box.bbox)) {
            reason = "structure mismatch or duplicate";
            break;
          }
        }
      }
      ordered_json item { { "page_id", ap.gt->page_id }, { "index", p } };
      if (pm.id)
        item["id"] = *pm.id;
      item["reason"] = reason;
      fps.push_back(std::move(item));
    }
  }

  std::vector<ordered_json> label_rows;
  ordered_json datasets = ordered_json::array();
  for (const auto &[label, idx]: loaded->labels) {
    CombinedCounts c;
    for (std::size_t i: idx)
      c += report.pages[i].counts;
    ordered_json b { { "dataset", label } };
    b.update(prf_json(c));
    datasets.push_back(b);
    label_rows.push_back(b);
  }
  ordered_json overall { { "dataset", "overall" } };
  overall.update(prf_json(report.total));
  label_rows.push_back(overall);

  if (opts.format == "csv") {
    emit(to_csv({ "tp", "fp", "fn", "precision", "recall", "f1" },
                label_rows),
         opts.out);
    return kSuccess;
  }
  overall.erase("dataset");
  ordered_json out {
    { "metadata",
      metadata("combined", { { "gt", opts.gt }, { "pred", opts.pred } },
               { { "tau", opts.tau } }) },
    { "overall", std::move(overall) },
    { "detection_only", prf_json(detection_total) },
    { "datasets", std::move(datasets) },
    { "pages", std::move(rows) },
    { "false_positives", std::move(fps) },
    { "false_negatives", std::move(fns) },
  };
  emit(out, opts.out);
  return kSuccess;
}

// reactions

ordered_json reaction_block(const ReactionReport &r) {
  return { { "n_gt", r.n_gt },
           { "n_pred", r.n_pred },
           { "matched", r.matched },
           { "precision", r.metrics.precision },
           { "recall", r.metrics.recall },
           { "f1", r.metrics.f1 } };
}

int cmd_reactions(const Options &opts) {
  const auto loaded = load_pair(opts);
  std::vector<MatchMode> modes;
  if (opts.mode != "hard")
    modes.push_back(MatchMode::kSoft);
  if (opts.mode != "soft")
    modes.push_back(MatchMode::kHard);

  std::vector<ReactionPage> pages;
  for (const AlignedPage &ap: loaded->pages) {
    ReactionPage page;
    for (const AnnotatedReaction &r: ap.gt->reactions)
      page.gts.push_back(r.reaction());
    for (const AnnotatedReaction &r: ap.pred->reactions)
      page.preds.push_back(r.reaction());
    pages.push_back(std::move(page));
  }

  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < pages.size(); ++i) {
    rows.push_back({ { "page_id", loaded->pages[i].gt->page_id },
                     { "dataset", loaded->gt.label(*loaded->pages[i].gt) },
                     { "n_gt", pages[i].gts.size() },
                     { "n_pred", pages[i].preds.size() } });
  }
  ordered_json overall = ordered_json::object();
  std::map<std::string, ordered_json> per_label;
  for (MatchMode mode: modes) {
    const std::string name(to_string(mode));
    const ReactionReport report = reaction_prf(pages, mode);
    overall[name] = reaction_block(report);
    for (std::size_t i = 0; i < pages.size(); ++i)
      rows[i][name + "_matched"] = report.pages[i].matched;
    for (const auto &[label, idx]: loaded->labels)
      per_label[label][name] = reaction_block(
          reaction_prf(select(pages, idx), mode));
  }

  std::vector<ordered_json> label_rows;
  ordered_json datasets = ordered_json::array();
  for (auto &[label, block]: per_label) {
    ordered_json b { { "dataset", label } };
    b.update(block);
    datasets.push_back(b);
    label_rows.push_back(b);
  }
  ordered_json overall_row { { "dataset", "overall" } };
  overall_row.update(overall);
  label_rows.push_back(overall_row);

  if (opts.format == "csv") {
    std::vector<std::string> columns;
    for (MatchMode mode: modes) {
      const std::string name(to_string(mode));
      for (const char *c: { "n_gt", "n_pred", "matched", "precision",
                            "recall", "f1" })
        columns.push_back(name + "." + c);
    }
    emit(to_csv(columns, label_rows), opts.out);
    return kSuccess;
  }
  ordered_json report {
    { "metadata",
      metadata("reactions", { { "gt", opts.gt }, { "pred", opts.pred } },
               { { "mode", opts.mode },
                 { "entity_iou_threshold", kEntityIouThreshold } }) },
    { "overall", std::move(overall) },
    { "datasets", std::move(datasets) },
    { "pages", std::move(rows) },
  };
  emit(report, opts.out);
  return kSuccess;
}

// stats

ordered_json stats_json(const CorpusStats &s) {
  return { { "pages", s.n_pages },
           { "molecules", s.n_molecules },
           { "reactions", s.n_reactions } };
}

int cmd_stats(const Options &opts) {
  const GroundTruth gt = load_ground_truth(opts.gt);
  const std::vector<LabeledStats> rows = corpus_stats_by_dataset(gt);

  if (opts.format == "table") {
    std::vector<LabeledStats> table = rows;
    if (rows.size() != 1)
      table.push_back({ "Total", corpus_stats(gt) });
    emit(format_stats_table(table), opts.out);
    return kSuccess;
  }

  std::vector<ordered_json> label_rows;
  ordered_json datasets = ordered_json::array();
  for (const LabeledStats &row: rows) {
    ordered_json b { { "dataset", row.dataset } };
    b.update(stats_json(row.stats));
    datasets.push_back(b);
    label_rows.push_back(b);
  }
  ordered_json overall_row { { "dataset", "overall" } };
  overall_row.update(stats_json(corpus_stats(gt)));
  label_rows.push_back(overall_row);

  if (opts.format == "csv") {
    emit(to_csv({ "pages", "molecules", "reactions" }, label_rows), opts.out);
    return kSuccess;
  }
  ordered_json report {
    { "metadata",
      metadata("stats", { { "gt", opts.gt } }, ordered_json::object()) },
    { "overall", stats_json(corpus_stats(gt)) },
    { "datasets", std::move(datasets) },
  };
  emit(report, opts.out);
  return kSuccess;
}

// gen-fixture

int cmd_gen_fixture(const Options &opts) {
  const Fixture fx = generate_fixture(opts.seed, opts.fixture);
  const fs::path dir(opts.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw InputError("cannot create " + dir.string() + ": " + ec.message());
  emit(to_json(fx.gt), (dir / "gt.json").string());
  emit(to_json(fx.pred), (dir / "pred.json").string());
  emit(fx.expected, (dir / "expected.json").string());
  return kSuccess;
}

void add_io_options(CLI::App *sub, Options &opts, bool needs_pred,
                    std::vector<std::string> formats = { "json", "csv" }) {
  sub->add_option("--gt", opts.gt, "Ground-truth JSON file")->required();
  if (needs_pred)
    sub->add_option("--pred", opts.pred, "Prediction JSON file")->required();
  sub->add_option("--out", opts.out, "Report path (default: standard output)");
  sub->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember(formats));
}

void add_fixture_options(CLI::App *sub, Options &opts) {
  FixtureParams &p = opts.fixture;
  sub->add_option("--seed", opts.seed, "Random seed");
  sub->add_option("--out", opts.out, "Output directory")->required();
  sub->add_option("--pages", p.pages, "Number of pages");
  sub->add_option("--min-molecules", p.min_molecules);
  sub->add_option("--max-molecules", p.max_molecules);
  sub->add_option("--min-reactions", p.min_reactions);
  sub->add_option("--max-reactions", p.max_reactions);
  sub->add_option("--grid-cols", p.grid_cols);
  sub->add_option("--grid-rows", p.grid_rows);
  sub->add_option("--dataset", p.dataset, "Dataset label");
  sub->add_option("--box-jitter", p.perturbation.box_jitter);
  sub->add_option("--corruption-rate",
                  p.perturbation.structure_corruption_rate);
  sub->add_option("--drop-rate", p.perturbation.drop_rate);
  sub->add_option("--spurious-rate", p.perturbation.spurious_rate);
  sub->add_option("--role-swap-rate", p.perturbation.role_swap_rate);
}
}  // namespace

int run(int argc, const char *const *argv) {
  configure_logging();

  CLI::App app { "Evaluation toolkit for chemical structure and reaction "
                 "extraction from documents",
                 "chemeval" };
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Options opts;
  auto *detect = app.add_subcommand("detect", "COCO AP/AR/F1 of boxes");
  add_io_options(detect, opts, true);
  auto *convert = app.add_subcommand(
      "convert", "Structure match rate and Tanimoto, id-aligned");
  add_io_options(convert, opts, true);
  auto *combined = app.add_subcommand(
      "combined", "Detection and structure jointly correct");
  add_io_options(combined, opts, true);
  combined->add_option("--tau", opts.tau, "IoU threshold");
  auto *reactions = app.add_subcommand("reactions",
                                       "Soft and hard reaction matching");
  add_io_options(reactions, opts, true);
  reactions->add_option("--mode", opts.mode, "soft, hard or both")
      ->check(CLI::IsMember({ "soft", "hard", "both" }));
  auto *stats = app.add_subcommand("stats", "Page, molecule and reaction "
                                            "counts per dataset");
  add_io_options(stats, opts, false, { "json", "csv", "table" });
  auto *gen = app.add_subcommand("gen-fixture",
                                 "Write a seeded synthetic corpus");
  add_fixture_options(gen, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kSuccess : kInputError;
  }

  try {
    if (detect->parsed())
      return cmd_detect(opts);
    if (convert->parsed())
      return cmd_convert(opts);
    if (combined->parsed())
      return cmd_combined(opts);
    if (reactions->parsed())
      return cmd_reactions(opts);
    if (stats->parsed())
      return cmd_stats(opts);
    return cmd_gen_fixture(opts);
  } catch (const CorpusError &e) {
    std::cerr << "chemeval: error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError &e) {
    std::cerr << "chemeval: error: " << e.what() << '\n';
    return kInputError;
  } catch (const FixtureError &e) {
    std::cerr << "chemeval: error: " << e.what() << '\n';
    return kInputError;
  } catch (const UndefinedMetricError &e) {
    std::cerr << "chemeval: undefined metric: " << e.what() << '\n';
    return kUndefinedMetric;
  } catch (const std::exception &e) {
    std::cerr << "chemeval: internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

int run(const std::vector<std::string> &args) {
  std::vector<const char *> argv { "chemeval" };
  for (const std::string &a: args)
    argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace chemeval::cli
