//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_CORPUS_H_
#define CHEMEVAL_CORPUS_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chemeval/detection.h"
#include "chemeval/molecule.h"
#include "chemeval/reaction.h"

namespace chemeval {

enum class CorpusErrorKind {
  kIo,
  kSchema,
  kDuplicatePage,
  kInvalidMolfile,
  kOutOfBounds,
  kUnresolvedReference,
  kPageMismatch,
};

std::string_view to_string(CorpusErrorKind kind);

/// Load or validation failure, located by page and item where possible.
class CorpusError: public std::runtime_error {
public:
  CorpusError(CorpusErrorKind kind, std::string page_id, std::string item_id,
              const std::string &message);

  CorpusErrorKind kind() const { return kind_; }
  const std::string &page_id() const { return page_id_; }
  const std::string &item_id() const { return item_id_; }

private:
  CorpusErrorKind kind_;
  std::string page_id_;
  std::string item_id_;
};

/// Entity of a reaction as written in a file: an inline box or a reference
/// to a molecule on the same page. `entity` always carries the resolved box.
struct AnnotatedEntity {
  RxnEntity entity;
  std::string ref;

  friend bool operator==(const AnnotatedEntity &,
                         const AnnotatedEntity &) = default;
};

struct AnnotatedReaction {
  std::vector<AnnotatedEntity> entities;
  std::optional<double> score;

  Reaction reaction() const;

  friend bool operator==(const AnnotatedReaction &,
                         const AnnotatedReaction &) = default;
};

struct GtMolecule {
  std::string id;
  BBox bbox;
  std::string molfile;
  // Parsed and normalized at load time.
  Molecule structure;
  std::string key;

  friend bool operator==(const GtMolecule &, const GtMolecule &) = default;
};

struct PageAnnotation {
  std::string page_id;
  // Empty means the file-level dataset label.
  std::string dataset;
  double width = 0;
  double height = 0;
  std::vector<GtMolecule> molecules;
  std::vector<AnnotatedReaction> reactions;

  friend bool operator==(const PageAnnotation &,
                         const PageAnnotation &) = default;
};

struct GroundTruth {
  std::string dataset;
  std::vector<PageAnnotation> pages;

  /// Dataset label of a page (page label, else the file label).
  const std::string &label(const PageAnnotation &page) const;

  friend bool operator==(const GroundTruth &, const GroundTruth &) = default;
};

enum class StructureFormat { kMolfile, kSmiles };

std::string_view to_string(StructureFormat format);

struct PredMolecule {
  // Ground-truth molecule this prediction was made for (conversion mode).
  std::optional<std::string> id;
  ScoredBox box;
  StructureFormat format = StructureFormat::kSmiles;
  std::string structure;

  friend bool operator==(const PredMolecule &, const PredMolecule &) = default;
};

struct PagePrediction {
  std::string page_id;
  std::vector<PredMolecule> molecules;
  std::vector<AnnotatedReaction> reactions;

  friend bool operator==(const PagePrediction &,
                         const PagePrediction &) = default;
};

struct Predictions {
  std::string dataset;
  std::vector<PagePrediction> pages;

  friend bool operator==(const Predictions &, const Predictions &) = default;
};

/// Result of resolving a predicted structure. Unparseable structures yield
/// kInvalidKey and a diagnostic instead of an exception.
struct ResolvedStructure {
  std::optional<Molecule> molecule;
  std::string key;
  std::string diagnostic;

  bool valid() const { return molecule.has_value(); }
};

ResolvedStructure resolve_structure(StructureFormat format,
                                    std::string_view text);

/// Parses and validates a ground-truth document. Every MOLfile is parsed and
/// normalized; failures name the page and molecule.
GroundTruth parse_ground_truth(const nlohmann::json &doc);
GroundTruth load_ground_truth(const std::filesystem::path &path);

/// Parses and validates a prediction document. Structures are kept as text
/// and resolved on demand with resolve_structure().
Predictions parse_predictions(const nlohmann::json &doc);
Predictions load_predictions(const std::filesystem::path &path);

nlohmann::ordered_json to_json(const GroundTruth &gt);
nlohmann::ordered_json to_json(const Predictions &pred);

/// Ground-truth pages paired with their predictions, by page_id. Pages
/// missing on either side raise a kPageMismatch error listing them.
struct AlignedPage {
  const PageAnnotation *gt;
  const PagePrediction *pred;
};

std::vector<AlignedPage> align_pages(const GroundTruth &gt,
                                     const Predictions &pred);

struct CorpusStats {
  long n_pages = 0;
  long n_molecules = 0;
  long n_reactions = 0;

  friend bool operator==(const CorpusStats &, const CorpusStats &) = default;
};

CorpusStats corpus_stats(const GroundTruth &gt);

struct LabeledStats {
  std::string dataset;
  CorpusStats stats;
};

/// Stats per dataset label, labels in order of first appearance.
std::vector<LabeledStats> corpus_stats_by_dataset(const GroundTruth &gt);

/// Plain-text table with one row per dataset label:
///
///   Dataset   # Pages   # Molecules   # Reactions
///   Patents       300         2,482           728
std::string format_stats_table(const std::vector<LabeledStats> &rows);

/// 2482 -> "2,482".
std::string with_thousands(long value);

}  // namespace chemeval

#endif  // CHEMEVAL_CORPUS_H_
