//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <json.hpp>

#include "chemeval/combined.h"
#include "chemeval/corpus.h"
#include "chemeval/fixture.h"
#include "chemeval/molfile.h"
#include "support.h"

namespace chemeval {
namespace {
using nlohmann::json;

const char *const kMethanol =
    "\n  hand\n\n"
    "  2  1  0  0  0  0  0  0  0  0999 V2000\n"
    "    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    1.0000    0.0000    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "  1  2  1  0\n"
    "M  END\n";

json minimal_gt() {
  return json::parse(R"({
    "dataset": "Patents",
    "pages": [{
      "page_id": "p1", "width": 100, "height": 100,
      "molecules": [
        {"id": "a", "bbox": [0, 0, 10, 10], "molfile": ""},
        {"id": "b", "bbox": [20, 0, 30, 10], "molfile": ""}
      ],
      "reactions": [{
        "reactants": [{"ref": "a"}],
        "conditions": [{"kind": "text", "bbox": [12, 0, 18, 5]}],
        "products": [{"ref": "b"}]
      }]
    }]
  })");
}

json with_molfiles(json doc) {
  for (auto &page: doc["pages"]) {
    for (auto &m: page["molecules"])
      m["molfile"] = kMethanol;
  }
  return doc;
}

CorpusError gt_error(const json &doc) {
  try {
    parse_ground_truth(doc);
  } catch (const CorpusError &e) {
    return e;
  }
  ADD_FAILURE() << "expected CorpusError";
  return CorpusError(CorpusErrorKind::kIo, "", "", "");
}

CorpusError pred_error(const json &doc) {
  try {
    parse_predictions(doc);
  } catch (const CorpusError &e) {
    return e;
  }
  ADD_FAILURE() << "expected CorpusError";
  return CorpusError(CorpusErrorKind::kIo, "", "", "");
}

TEST(LoadGroundTruth, MinimalPage) {
  const GroundTruth gt = parse_ground_truth(with_molfiles(minimal_gt()));
  ASSERT_EQ(gt.pages.size(), 1u);
  const PageAnnotation &page = gt.pages[0];
  EXPECT_EQ(page.molecules.size(), 2u);
  EXPECT_EQ(page.molecules[0].key, "CO");
  ASSERT_EQ(page.reactions.size(), 1u);
  const Reaction r = page.reactions[0].reaction();
  ASSERT_EQ(r.entities.size(), 3u);
  EXPECT_EQ(r.entities[0].bbox, (BBox { 0, 0, 10, 10 }));
  EXPECT_EQ(r.entities[1].kind, EntityKind::kText);
  EXPECT_EQ(r.entities[2].role, RxnRole::kProduct);
  EXPECT_EQ(gt.label(page), "Patents");
}

TEST(LoadGroundTruth, DuplicatePageId) {
  json doc = with_molfiles(minimal_gt());
  doc["pages"].push_back(doc["pages"][0]);
  const CorpusError e = gt_error(doc);
  EXPECT_EQ(e.kind(), CorpusErrorKind::kDuplicatePage);
  EXPECT_NE(std::string(e.what()).find("p1"), std::string::npos);
}

TEST(LoadGroundTruth, BoxOutsidePage) {
  json doc = with_molfiles(minimal_gt());
  doc["pages"][0]["molecules"][1]["bbox"] = { 95, 0, 105, 10 };
  const CorpusError e = gt_error(doc);
  EXPECT_EQ(e.kind(), CorpusErrorKind::kOutOfBounds);
  EXPECT_EQ(e.page_id(), "p1");
  EXPECT_EQ(e.item_id(), "molecule b");
}

TEST(LoadGroundTruth, InvalidMolfileIsLocated) {
  json doc = with_molfiles(minimal_gt());
  doc["pages"][0]["molecules"][0]["molfile"] = "garbage";
  const CorpusError e = gt_error(doc);
  EXPECT_EQ(e.kind(), CorpusErrorKind::kInvalidMolfile);
  EXPECT_EQ(e.item_id(), "molecule a");
}

TEST(LoadGroundTruth, SchemaErrors) {
  json doc = with_molfiles(minimal_gt());
  doc["pages"][0].erase("width");
  EXPECT_EQ(gt_error(doc).kind(), CorpusErrorKind::kSchema);

  doc = with_molfiles(minimal_gt());
  doc["pages"][0]["molecules"][0]["bbox"] = { 10, 0, 5, 10 };
  EXPECT_EQ(gt_error(doc).kind(), CorpusErrorKind::kSchema);

  doc = with_molfiles(minimal_gt());
  doc["pages"][0]["reactions"][0]["products"] = json::array(
      { { { "kind", "text" }, { "bbox", { 0, 0, 1, 1 } } } });
  EXPECT_EQ(gt_error(doc).kind(), CorpusErrorKind::kSchema);

  doc = with_molfiles(minimal_gt());
  doc["pages"][0]["molecules"][1]["id"] = "a";
  EXPECT_EQ(gt_error(doc).kind(), CorpusErrorKind::kSchema);
}

TEST(LoadGroundTruth, UnresolvedReference) {
  json doc = with_molfiles(minimal_gt());
  doc["pages"][0]["reactions"][0]["reactants"][0]["ref"] = "zz";
  const CorpusError e = gt_error(doc);
  EXPECT_EQ(e.kind(), CorpusErrorKind::kUnresolvedReference);
  EXPECT_EQ(e.item_id(), "reaction 1");
}

TEST(LoadGroundTruth, MissingFile) {
  try {
    load_ground_truth("/nonexistent/gt.json");
    FAIL();
  } catch (const CorpusError &e) {
    EXPECT_EQ(e.kind(), CorpusErrorKind::kIo);
  }
}

json minimal_pred(const std::string &smiles, double score = 0.9) {
  return { { "dataset", "Patents" },
           { "pages",
             { { { "page_id", "p1" },
                 { "molecules",
                   { { { "id", "a" },
                       { "bbox", { 0, 0, 10, 10 } },
                       { "score", score },
                       { "structure",
                         { { "format", "smiles" }, { "value", smiles } } } } } },
                 { "reactions", json::array() } } } } };
}

TEST(LoadPredictions, InvalidStructureIsKept) {
  const Predictions pred = parse_predictions(minimal_pred("C1CC"));
  ASSERT_EQ(pred.pages[0].molecules.size(), 1u);
  const PredMolecule &m = pred.pages[0].molecules[0];
  const ResolvedStructure rs = resolve_structure(m.format, m.structure);
  EXPECT_FALSE(rs.valid());
  EXPECT_EQ(rs.key, kInvalidKey);
  EXPECT_NE(rs.diagnostic.find("never closed"), std::string::npos);

  const GroundTruth gt = parse_ground_truth(with_molfiles(minimal_gt()));
  const std::vector<CombinedPage> pages { { { { gt.pages[0].molecules[0].bbox,
                                                gt.pages[0].molecules[0].key } },
                                            { { m.box, rs.key } } } };
  const CombinedReport report = combined_prf(pages);
  EXPECT_EQ(report.total, (CombinedCounts { 0, 1, 1 }));
}

TEST(LoadPredictions, EmptyPageIsValid) {
  json doc = minimal_pred("C");
  doc["pages"][0]["molecules"] = json::array();
  EXPECT_TRUE(parse_predictions(doc).pages[0].molecules.empty());
}

TEST(LoadPredictions, ScoreOutOfRange) {
  EXPECT_EQ(pred_error(minimal_pred("C", 1.5)).kind(), CorpusErrorKind::kSchema);
  EXPECT_EQ(pred_error(minimal_pred("C", -0.1)).kind(),
            CorpusErrorKind::kSchema);
}

TEST(LoadPredictions, UnknownFormat) {
  json doc = minimal_pred("C");
  doc["pages"][0]["molecules"][0]["structure"]["format"] = "inchi";
  EXPECT_EQ(pred_error(doc).kind(), CorpusErrorKind::kSchema);
}

TEST(ResolveStructure, MolfileAndSmiles) {
  EXPECT_EQ(resolve_structure(StructureFormat::kSmiles, "OC").key, "CO");
  EXPECT_EQ(resolve_structure(StructureFormat::kMolfile, kMethanol).key, "CO");
  EXPECT_EQ(resolve_structure(StructureFormat::kSmiles, "C(C)(C)(C)(C)C").key,
            kInvalidKey);
}

TEST(AlignPages, MismatchListsPages) {
  const GroundTruth gt = parse_ground_truth(with_molfiles(minimal_gt()));
  json doc = minimal_pred("C");
  doc["pages"][0]["page_id"] = "p2";
  const Predictions pred = parse_predictions(doc);
  try {
    align_pages(gt, pred);
    FAIL();
  } catch (const CorpusError &e) {
    EXPECT_EQ(e.kind(), CorpusErrorKind::kPageMismatch);
    const std::string what = e.what();
    EXPECT_NE(what.find("p1"), std::string::npos);
    EXPECT_NE(what.find("p2"), std::string::npos);
  }
}

TEST(AlignPages, SortedByPageId) {
  FixtureParams params;
  params.pages = 12;
  const Fixture fx = generate_fixture(5, params);
  Predictions reversed = fx.pred;
  std::reverse(reversed.pages.begin(), reversed.pages.end());
  GroundTruth gt = fx.gt;
  std::swap(gt.pages[0], gt.pages[5]);
  const auto aligned = align_pages(gt, reversed);
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    EXPECT_EQ(aligned[i].gt->page_id, aligned[i].pred->page_id);
    if (i > 0) {
      EXPECT_LT(aligned[i - 1].gt->page_id, aligned[i].gt->page_id);
    }
  }
}

TEST(CorpusStats, Counts) {
  json doc = with_molfiles(minimal_gt());
  json page2 = doc["pages"][0];
  page2["page_id"] = "p2";
  page2["molecules"].erase(1);
  page2["reactions"] = json::array();
  doc["pages"].push_back(page2);
  EXPECT_EQ(corpus_stats(parse_ground_truth(doc)), (CorpusStats { 2, 3, 1 }));
  EXPECT_EQ(corpus_stats(parse_ground_truth(json::parse(
                R"({"dataset": "x", "pages": []})"))),
            (CorpusStats { 0, 0, 0 }));
}

TEST(CorpusStats, TableLayout) {
  const std::vector<LabeledStats> rows { { "Patents", { 300, 2482, 728 } } };
  const std::string table = format_stats_table(rows);
  EXPECT_NE(table.find("Patents"), std::string::npos);
  EXPECT_NE(table.find("2,482"), std::string::npos);
  EXPECT_NE(table.find("728"), std::string::npos);
  EXPECT_EQ(with_thousands(0), "0");
  EXPECT_EQ(with_thousands(999), "999");
  EXPECT_EQ(with_thousands(1000), "1,000");
  EXPECT_EQ(with_thousands(1234567), "1,234,567");
}

TEST(CorpusStats, PerDatasetLabels) {
  json doc = with_molfiles(minimal_gt());
  json page2 = doc["pages"][0];
  page2["page_id"] = "p2";
  page2["dataset"] = "Articles";
  doc["pages"].push_back(page2);
  const auto rows = corpus_stats_by_dataset(parse_ground_truth(doc));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].dataset, "Patents");
  EXPECT_EQ(rows[1].dataset, "Articles");
  EXPECT_EQ(rows[1].stats, (CorpusStats { 1, 2, 1 }));
}

TEST(CorpusRoundTrip, WriteThenLoad) {
  FixtureParams params;
  params.pages = 6;
  params.max_reactions = 3;
  params.perturbation = { 0.1, 0.3, 0.1, 0.5, 0.3 };
  const Fixture fx = generate_fixture(99, params);
  const GroundTruth gt = parse_ground_truth(json::parse(to_json(fx.gt).dump()));
  EXPECT_EQ(gt, fx.gt);
  const Predictions pred = parse_predictions(
      json::parse(to_json(fx.pred).dump()));
  EXPECT_EQ(pred, fx.pred);
}

}  // namespace
}  // namespace chemeval
