//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit status
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "checks.h"
#include "chemeval/cli.h"
#include "chemeval/corpus.h"
#include "chemeval/fixture.h"
#include "chemeval/reaction.h"
#include "support.h"

namespace {
using namespace chemeval;
using checks::CheckResult;
using Clock = std::chrono::steady_clock;
using nlohmann::json;
using testing::read_file;
using testing::TempDir;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void merge(CheckResult &into, const CheckResult &r, const std::string &name) {
  into.cases += r.cases;
  if (!r.ok)
    into.fail(name + ": " + r.detail);
}

CheckResult f1_arithmetic() {
  struct Row {
    double p, r, want;
  };
  CheckResult result;
  for (const Row &row: { Row { 0.914, 0.938, 0.926 },
                         Row { 0.891, 0.930, 0.910 },
                         Row { 0.895, 0.887, 0.891 } }) {
    ++result.cases;
    const double got = f1(row.p, row.r);
    if (std::abs(got - row.want) > 0.0005) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "f1(%.3f, %.3f) = %.6f, want %.3f",
                    row.p, row.r, got, row.want);
      result.fail(buf);
    }
  }
  return result;
}

CheckResult canonicalization() {
  CheckResult result;
  const auto start = Clock::now();
  merge(result, checks::permutation_invariance(2001, 200, 1000),
        "permutations");
  merge(result, checks::key_iff_isomorphic(2002, 500), "pairs");
  const double elapsed = seconds_since(start);
  if (elapsed >= 30)
    result.fail("took " + std::to_string(elapsed) + " s");
  return result;
}

CombinedCounts fixture_counts(const Fixture &fx) {
  std::vector<CombinedPage> pages;
  for (const AlignedPage &ap: align_pages(fx.gt, fx.pred)) {
    CombinedPage page;
    for (const GtMolecule &m: ap.gt->molecules)
      page.gts.push_back({ m.bbox, m.key });
    for (const PredMolecule &m: ap.pred->molecules)
      page.preds.push_back({ m.box, resolve_structure(m.format, m.structure).key });
    pages.push_back(std::move(page));
  }
  return combined_prf(pages).total;
}

CombinedCounts expected_counts(const Fixture &fx) {
  const json &t = fx.expected["combined"]["total"];
  return { t["tp"].get<long>(), t["fp"].get<long>(), t["fn"].get<long>() };
}

CheckResult combined_metric() {
  CheckResult result;
  merge(result, checks::combined_vs_oracle(4001, 1000), "random pages");

  FixtureParams params;
  params.pages = 20;
  for (std::uint64_t seed = 4100; seed < 4120; ++seed, ++result.cases) {
    params.perturbation = { 0.2, 0.3, 0.1, 0.3, 0.2 };
    const Fixture fx = generate_fixture(seed, params);
    if (fixture_counts(fx) != expected_counts(fx))
      result.fail("fixture seed " + std::to_string(seed));
  }

  params.perturbation = {};
  const Fixture perfect = generate_fixture(4200, params);
  const PrecisionRecall best = precision_recall(fixture_counts(perfect));
  ++result.cases;
  if (best.precision != 1 || best.recall != 1 || best.f1 != 1)
    result.fail("perfect fixture is not P=R=F1=1");

  params.perturbation.structure_corruption_rate = 1;
  const Fixture corrupted = generate_fixture(4201, params);
  const PrecisionRecall worst = precision_recall(fixture_counts(corrupted));
  ++result.cases;
  if (worst.precision != 0 || worst.recall != 0)
    result.fail("corrupted fixture is not P=R=0");
  return result;
}

CheckResult coco() {
  CheckResult result;
  merge(result, checks::ap_ar_vs_oracle(5001, 2000), "random corpora");
  const std::vector<DetectionPage> pages {
    { { { 0, 0, 10, 10 } }, { { { 0, 0, 10, 6 }, 0.8 } } },
  };
  ++result.cases;
  if (coco_ap(pages) != 0.3 || coco_ar(pages) != 0.3)
    result.fail("IoU 0.60 case gave ap " + std::to_string(coco_ap(pages))
                + " ar " + std::to_string(coco_ar(pages)));
  return result;
}

std::vector<ReactionPage> reaction_pages(const Fixture &fx) {
  std::vector<ReactionPage> pages;
  for (const AlignedPage &ap: align_pages(fx.gt, fx.pred)) {
    ReactionPage page;
    for (const auto &r: ap.gt->reactions)
      page.gts.push_back(r.reaction());
    for (const auto &r: ap.pred->reactions)
      page.preds.push_back(r.reaction());
    pages.push_back(std::move(page));
  }
  return pages;
}

CheckResult reactions() {
  CheckResult result;
  merge(result, checks::reactions_vs_oracle(6001, 5000), "random pairs");

  FixtureParams params;
  params.pages = 40;
  params.min_reactions = 1;
  params.max_reactions = 2;
  params.perturbation.role_swap_rate = 1;
  const Fixture fx = generate_fixture(6100, params);
  const auto pages = reaction_pages(fx);
  const double soft = reaction_prf(pages, MatchMode::kSoft).metrics.f1;
  const double hard = reaction_prf(pages, MatchMode::kHard).metrics.f1;
  ++result.cases;
  if (soft != 1.0 || hard != 0.0)
    result.fail("role-swap corpus gave soft " + std::to_string(soft)
                + " hard " + std::to_string(hard));
  return result;
}

CheckResult determinism() {
  CheckResult result;
  TempDir a("acceptance-det-a"), b("acceptance-det-b");
  for (const TempDir *dir: { &a, &b }) {
    const int code = cli::run({ "gen-fixture", "--seed", "7001", "--out",
                                dir->path().string(), "--pages", "25",
                                "--box-jitter", "0.15", "--corruption-rate",
                                "0.25", "--drop-rate", "0.1", "--spurious-rate",
                                "0.3", "--role-swap-rate", "0.3",
                                "--max-reactions", "3" });
    if (code != cli::kSuccess) {
      result.fail("gen-fixture exit " + std::to_string(code));
      return result;
    }
  }
  for (const char *f: { "gt.json", "pred.json", "expected.json" }) {
    ++result.cases;
    if (read_file(a.file(f)) != read_file(b.file(f)))
      result.fail(std::string("gen-fixture output differs: ") + f);
  }

  const std::string gt = a.file("gt.json"), pred = a.file("pred.json");
  const std::vector<std::vector<std::string>> commands {
    { "detect", "--gt", gt, "--pred", pred },
    { "convert", "--gt", gt, "--pred", pred },
    { "combined", "--gt", gt, "--pred", pred },
    { "combined", "--gt", gt, "--pred", pred, "--tau", "0.7" },
    { "reactions", "--gt", gt, "--pred", pred },
    { "reactions", "--gt", gt, "--pred", pred, "--mode", "hard" },
    { "stats", "--gt", gt },
    { "stats", "--gt", gt, "--format", "table" },
  };
  for (const auto &base: commands) {
    for (const char *format: { "json", "csv" }) {
      std::vector<std::string> args = base;
      const bool has_format = args.size() > 2 && args[args.size() - 2] == "--format";
      if (!has_format)
        args.insert(args.end(), { "--format", format });
      std::string out[2];
      for (int i = 0; i < 2; ++i) {
        const std::string path = b.file("report-" + std::to_string(i));
        std::vector<std::string> full = args;
        full.insert(full.end(), { "--out", path });
        const int code = cli::run(full);
        if (code != cli::kSuccess)
          result.fail(base[0] + " exit " + std::to_string(code));
        out[i] = read_file(path);
      }
      ++result.cases;
      if (out[0].empty() || out[0] != out[1])
        result.fail(base[0] + " output differs between runs");
      if (has_format)
        break;
    }
  }
  return result;
}

CheckResult throughput(std::string &scale) {
  CheckResult result;
  TempDir dir("acceptance-scale");
  const int code = cli::run({ "gen-fixture", "--seed", "8001", "--out",
                              dir.path().string(), "--pages", "550",
                              "--min-molecules", "5", "--max-molecules", "9",
                              "--min-reactions", "1", "--max-reactions", "3",
                              "--box-jitter", "0.1", "--corruption-rate", "0.1",
                              "--drop-rate", "0.05", "--spurious-rate", "0.1",
                              "--role-swap-rate", "0.1" });
  if (code != cli::kSuccess) {
    result.fail("gen-fixture exit " + std::to_string(code));
    return result;
  }
  const CorpusStats stats = corpus_stats(load_ground_truth(dir.file("gt.json")));
  scale = std::to_string(stats.n_pages) + " pages, "
          + std::to_string(stats.n_molecules) + " molecules, "
          + std::to_string(stats.n_reactions) + " reactions";

  const auto start = Clock::now();
  for (const char *cmd: { "detect", "combined", "reactions" }) {
    ++result.cases;
    if (cli::run({ cmd, "--gt", dir.file("gt.json"), "--pred",
                   dir.file("pred.json"), "--out", dir.file("r.json") })
        != cli::kSuccess)
      result.fail(std::string(cmd) + " failed");
  }
  const double elapsed = seconds_since(start);
  char buf[64];
  std::snprintf(buf, sizeof(buf), ", %.2f s", elapsed);
  scale += buf;
  if (elapsed >= 10)
    result.fail("took " + std::to_string(elapsed) + " s");
  return result;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char *name;
    std::function<CheckResult()> run;
  };
  std::string scale;
  const std::vector<Criterion> criteria {
    { 1, "f1 arithmetic", f1_arithmetic },
    { 2, "canonicalization soundness", canonicalization },
    { 3, "format round trips", [] { return checks::round_trips(3001, 1500); } },
    { 4, "combined metric", combined_metric },
    { 5, "COCO AP/AR", coco },
    { 6, "reaction metrics", reactions },
    { 7, "determinism", determinism },
    { 8, "throughput", [&scale] { return throughput(scale); } },
  };

  int failed = 0;
  for (const Criterion &c: criteria) {
    const auto start = Clock::now();
    CheckResult r;
    try {
      r = c.run();
    } catch (const std::exception &e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    failed += !r.ok;
    std::printf("%s criterion %d: %s (%ld cases, %.2f s)", r.ok ? "PASS" : "FAIL",
                c.id, c.name, r.cases, elapsed);
    if (c.id == 8 && !scale.empty())
      std::printf(" [%s]", scale.c_str());
    if (!r.ok)
      std::printf(" - %s", r.detail.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
