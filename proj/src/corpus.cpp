//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/corpus.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "chemeval/canonical.h"
#include "chemeval/molfile.h"
#include "chemeval/normalize.h"
#include "chemeval/smiles.h"

namespace chemeval {
namespace {
using nlohmann::json;
using nlohmann::ordered_json;

// Location context for schema errors.
struct Where {
  std::string page;
  std::string item;

  [[noreturn]] void fail(CorpusErrorKind kind,
                         const std::string &message) const {
    throw CorpusError(kind, page, item, message);
  }
  [[noreturn]] void schema(const std::string &message) const {
    fail(CorpusErrorKind::kSchema, message);
  }
};

const json &field(const json &obj, const char *name, const Where &where) {
  auto it = obj.find(name);
  if (it == obj.end())
    where.schema(std::string("missing field \"") + name + "\"");
  return *it;
}

std::string string_field(const json &obj, const char *name,
                         const Where &where) {
  const json &v = field(obj, name, where);
  if (!v.is_string())
    where.schema(std::string("field \"") + name + "\" must be a string");
  return v.get<std::string>();
}

double number_field(const json &obj, const char *name, const Where &where) {
  const json &v = field(obj, name, where);
  if (!v.is_number())
    where.schema(std::string("field \"") + name + "\" must be a number");
  return v.get<double>();
}

const json &array_field(const json &obj, const char *name,
                        const Where &where) {
  const json &v = field(obj, name, where);
  if (!v.is_array())
    where.schema(std::string("field \"") + name + "\" must be an array");
  return v;
}

const json &optional_array(const json &obj, const char *name,
                           const Where &where) {
  static const json kEmpty = json::array();
  auto it = obj.find(name);
  if (it == obj.end())
    return kEmpty;
  if (!it->is_array())
    where.schema(std::string("field \"") + name + "\" must be an array");
  return *it;
}

void require_object(const json &v, const Where &where, const char *what) {
  if (!v.is_object())
    where.schema(std::string(what) + " must be an object");
}

BBox parse_bbox(const json &obj, const Where &where) {
  const json &v = field(obj, "bbox", where);
  if (!v.is_array() || v.size() != 4
      || !std::all_of(v.begin(), v.end(),
                      [](const json &x) { return x.is_number(); }))
    where.schema("bbox must be [x1, y1, x2, y2]");

  BBox box { v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
             v[3].get<double>() };
  if (!box.valid())
    where.schema("invalid bbox (need 0 <= x1 < x2, 0 <= y1 < y2)");
  return box;
}

double parse_score(const json &obj, const Where &where) {
  const double score = number_field(obj, "score", where);
  if (!(score >= 0.0 && score <= 1.0))
    where.schema("score " + std::to_string(score) + " outside [0, 1]");
  return score;
}

// Reaction entities; molecule references resolve through `boxes`.
AnnotatedReaction parse_reaction(const json &obj, std::size_t index,
                                 const std::map<std::string, BBox> &boxes,
                                 bool scored, const Where &page_where) {
  Where where { page_where.page, "reaction " + std::to_string(index + 1) };
  require_object(obj, where, "reaction");

  AnnotatedReaction rxn;
  if (scored) {
    rxn.score = parse_score(obj, where);
  } else if (obj.contains("score")) {
    rxn.score = parse_score(obj, where);
  }

  static constexpr std::pair<const char *, RxnRole> kGroups[] = {
    { "reactants", RxnRole::kReactant },
    { "conditions", RxnRole::kCondition },
    { "products", RxnRole::kProduct },
  };
  int reactants = 0, products = 0;
  for (const auto &[name, role]: kGroups) {
    const json &group = name == std::string("conditions")
                            ? optional_array(obj, name, where)
                            : array_field(obj, name, where);
    for (const json &e: group) {
      require_object(e, where, "reaction entity");
      AnnotatedEntity entity;
      entity.entity.role = role;
      if (e.contains("ref")) {
        if (!e["ref"].is_string())
          where.schema("entity ref must be a string");
        entity.ref = e["ref"].get<std::string>();
        auto it = boxes.find(entity.ref);
        if (it == boxes.end())
          where.fail(CorpusErrorKind::kUnresolvedReference,
                     "entity references unknown molecule \"" + entity.ref
                         + "\"");
        entity.entity.kind = EntityKind::kMolecule;
        entity.entity.bbox = it->second;
      } else {
        const std::string kind = string_field(e, "kind", where);
        if (kind == "molecule") {
          entity.entity.kind = EntityKind::kMolecule;
        } else if (kind == "text") {
          entity.entity.kind = EntityKind::kText;
        } else {
          where.schema("unknown entity kind \"" + kind + "\"");
        }
        entity.entity.bbox = parse_bbox(e, where);
      }
      if (entity.entity.kind == EntityKind::kText
          && role != RxnRole::kCondition)
        where.schema("text entities are only allowed among conditions");
      reactants += role == RxnRole::kReactant;
      products += role == RxnRole::kProduct;
      rxn.entities.push_back(std::move(entity));
    }
  }
  if (reactants == 0 || products == 0)
    where.schema("a reaction needs at least one reactant and one product");
  return rxn;
}

ordered_json bbox_json(const BBox &b) {
  return ordered_json::array({ b.x1, b.y1, b.x2, b.y2 });
}

ordered_json reaction_json(const AnnotatedReaction &rxn) {
  ordered_json out = ordered_json::object();
  if (rxn.score)
    out["score"] = *rxn.score;
  static constexpr std::pair<const char *, RxnRole> kGroups[] = {
    { "reactants", RxnRole::kReactant },
    { "conditions", RxnRole::kCondition },
    { "products", RxnRole::kProduct },
  };
  for (const auto &[name, role]: kGroups) {
    ordered_json group = ordered_json::array();
    for (const AnnotatedEntity &e: rxn.entities) {
      if (e.entity.role != role)
        continue;
      if (!e.ref.empty()) {
        group.push_back({ { "ref", e.ref } });
      } else {
        group.push_back({ { "kind", std::string(to_string(e.entity.kind)) },
                          { "bbox", bbox_json(e.entity.bbox) } });
      }
    }
    out[name] = std::move(group);
  }
  return out;
}

json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CorpusError(CorpusErrorKind::kIo, "", "",
                      "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw CorpusError(CorpusErrorKind::kSchema, "", "",
                      path.string() + ": invalid JSON: " + e.what());
  }
}

std::string page_id_of(const json &page, std::size_t index) {
  Where where { "#" + std::to_string(index + 1), "" };
  require_object(page, where, "page");
  return string_field(page, "page_id", where);
}
}  // namespace

std::string_view to_string(CorpusErrorKind kind) {
  switch (kind) {
  case CorpusErrorKind::kIo:
    return "io";
  case CorpusErrorKind::kSchema:
    return "schema";
  case CorpusErrorKind::kDuplicatePage:
    return "duplicate-page";
  case CorpusErrorKind::kInvalidMolfile:
    return "invalid-molfile";
  case CorpusErrorKind::kOutOfBounds:
    return "out-of-bounds";
  case CorpusErrorKind::kUnresolvedReference:
    return "unresolved-reference";
  case CorpusErrorKind::kPageMismatch:
    return "page-mismatch";
  }
  return "?";
}

CorpusError::CorpusError(CorpusErrorKind kind, std::string page_id,
                         std::string item_id, const std::string &message)
    : std::runtime_error([&] {
        std::string what;
        if (!page_id.empty())
          what += "page " + page_id;
        if (!item_id.empty())
          what += (what.empty() ? "" : ", ") + item_id;
        if (!what.empty())
          what += ": ";
        return what + message;
      }()),
      kind_(kind), page_id_(std::move(page_id)),
      item_id_(std::move(item_id)) { }

Reaction AnnotatedReaction::reaction() const {
  Reaction rxn;
  rxn.score = score.value_or(1.0);
  for (const AnnotatedEntity &e: entities)
    rxn.entities.push_back(e.entity);
  return rxn;
}

const std::string &GroundTruth::label(const PageAnnotation &page) const {
  return page.dataset.empty() ? dataset : page.dataset;
}

std::string_view to_string(StructureFormat format) {
  return format == StructureFormat::kMolfile ? "molfile" : "smiles";
}

ResolvedStructure resolve_structure(StructureFormat format,
                                    std::string_view text) {
  ResolvedStructure result;
  try {
    Molecule raw = format == StructureFormat::kMolfile
                       ? parse_molfile(text).molecule
                       : parse_smiles(text);
    Molecule mol = normalize(raw);
    result.key = canonical_key(mol).value;
    result.molecule = std::move(mol);
  } catch (const std::exception &e) {
    result.key = kInvalidKey;
    result.diagnostic = e.what();
  }
  return result;
}

GroundTruth parse_ground_truth(const json &doc) {
  const Where top;
  require_object(doc, top, "ground-truth document");

  GroundTruth gt;
  gt.dataset = string_field(doc, "dataset", top);

  std::set<std::string> page_ids;
  const json &pages = array_field(doc, "pages", top);
  for (std::size_t pi = 0; pi < pages.size(); ++pi) {
    const json &p = pages[pi];
    PageAnnotation page;
    page.page_id = page_id_of(p, pi);
    Where where { page.page_id, "" };
    if (!page_ids.insert(page.page_id).second)
      where.fail(CorpusErrorKind::kDuplicatePage,
                 "duplicate page_id \"" + page.page_id + "\"");
    if (p.contains("dataset"))
      page.dataset = string_field(p, "dataset", where);
    page.width = number_field(p, "width", where);
    page.height = number_field(p, "height", where);
    if (!(page.width > 0 && page.height > 0))
      where.schema("page width and height must be positive");

    std::map<std::string, BBox> boxes;
    for (const json &m: array_field(p, "molecules", where)) {
      Where mw { page.page_id, "" };
      require_object(m, mw, "molecule");
      GtMolecule mol;
      mol.id = string_field(m, "id", mw);
      mw.item = "molecule " + mol.id;
      mol.bbox = parse_bbox(m, mw);
      if (mol.bbox.x2 > page.width || mol.bbox.y2 > page.height)
        mw.fail(CorpusErrorKind::kOutOfBounds,
                "bbox exceeds the page bounds");
      if (!boxes.emplace(mol.id, mol.bbox).second)
        mw.schema("duplicate molecule id");

      if (m.contains("molfile")) {
        mol.molfile = string_field(m, "molfile", mw);
      } else if (m.contains("structure")) {
        const json &s = m["structure"];
        require_object(s, mw, "structure");
        if (string_field(s, "format", mw) != "molfile")
          mw.schema("ground-truth structures must be MOLfiles");
        mol.molfile = string_field(s, "value", mw);
      } else {
        mw.schema("missing field \"molfile\"");
      }

      try {
        mol.structure = normalize(parse_molfile(mol.molfile).molecule);
        mol.key = canonical_key(mol.structure).value;
      } catch (const std::exception &e) {
        mw.fail(CorpusErrorKind::kInvalidMolfile, e.what());
      }
      page.molecules.push_back(std::move(mol));
    }

    const json &reactions = optional_array(p, "reactions", where);
    for (std::size_t ri = 0; ri < reactions.size(); ++ri) {
      AnnotatedReaction rxn = parse_reaction(reactions[ri], ri, boxes, false,
                                             where);
      for (const AnnotatedEntity &e: rxn.entities) {
        if (e.entity.bbox.x2 > page.width || e.entity.bbox.y2 > page.height)
          Where { page.page_id, "reaction " + std::to_string(ri + 1) }.fail(
              CorpusErrorKind::kOutOfBounds,
              "entity bbox exceeds the page bounds");
      }
      page.reactions.push_back(std::move(rxn));
    }
    gt.pages.push_back(std::move(page));
  }
  return gt;
}

GroundTruth load_ground_truth(const std::filesystem::path &path) {
  return parse_ground_truth(read_json_file(path));
}

Predictions parse_predictions(const json &doc) {
  const Where top;
  require_object(doc, top, "prediction document");

  Predictions pred;
  if (doc.contains("dataset"))
    pred.dataset = string_field(doc, "dataset", top);

  std::set<std::string> page_ids;
  const json &pages = array_field(doc, "pages", top);
  for (std::size_t pi = 0; pi < pages.size(); ++pi) {
    const json &p = pages[pi];
    PagePrediction page;
    page.page_id = page_id_of(p, pi);
    Where where { page.page_id, "" };
    if (!page_ids.insert(page.page_id).second)
      where.fail(CorpusErrorKind::kDuplicatePage,
                 "duplicate page_id \"" + page.page_id + "\"");

    std::map<std::string, BBox> boxes;
    const json &molecules = array_field(p, "molecules", where);
    for (std::size_t mi = 0; mi < molecules.size(); ++mi) {
      const json &m = molecules[mi];
      Where mw { page.page_id, "prediction " + std::to_string(mi + 1) };
      require_object(m, mw, "molecule");
      PredMolecule mol;
      if (m.contains("id")) {
        mol.id = string_field(m, "id", mw);
        mw.item = "prediction " + *mol.id;
      }
      mol.box.bbox = parse_bbox(m, mw);
      mol.box.score = parse_score(m, mw);
      if (mol.id && !boxes.emplace(*mol.id, mol.box.bbox).second)
        mw.schema("duplicate molecule id");

      if (m.contains("structure")) {
        const json &s = m["structure"];
        require_object(s, mw, "structure");
        const std::string format = string_field(s, "format", mw);
        if (format == "molfile") {
          mol.format = StructureFormat::kMolfile;
        } else if (format == "smiles") {
          mol.format = StructureFormat::kSmiles;
        } else {
          mw.schema("unknown structure format \"" + format + "\"");
        }
        mol.structure = string_field(s, "value", mw);
      } else if (m.contains("molfile")) {
        mol.format = StructureFormat::kMolfile;
        mol.structure = string_field(m, "molfile", mw);
      } else {
        mw.schema("missing field \"structure\"");
      }
      page.molecules.push_back(std::move(mol));
    }

    const json &reactions = optional_array(p, "reactions", where);
    for (std::size_t ri = 0; ri < reactions.size(); ++ri)
      page.reactions.push_back(
          parse_reaction(reactions[ri], ri, boxes, true, where));
    pred.pages.push_back(std::move(page));
  }
  return pred;
}

Predictions load_predictions(const std::filesystem::path &path) {
  return parse_predictions(read_json_file(path));
}

ordered_json to_json(const GroundTruth &gt) {
  ordered_json doc;
  doc["dataset"] = gt.dataset;
  ordered_json pages = ordered_json::array();
  for (const PageAnnotation &page: gt.pages) {
    ordered_json p;
    p["page_id"] = page.page_id;
    if (!page.dataset.empty())
      p["dataset"] = page.dataset;
    p["width"] = page.width;
    p["height"] = page.height;
    ordered_json molecules = ordered_json::array();
    for (const GtMolecule &m: page.molecules) {
      molecules.push_back({ { "id", m.id },
                            { "bbox", bbox_json(m.bbox) },
                            { "molfile", m.molfile } });
    }
    p["molecules"] = std::move(molecules);
    ordered_json reactions = ordered_json::array();
    for (const AnnotatedReaction &rxn: page.reactions)
      reactions.push_back(reaction_json(rxn));
    p["reactions"] = std::move(reactions);
    pages.push_back(std::move(p));
  }
  doc["pages"] = std::move(pages);
  return doc;
}

ordered_json to_json(const Predictions &pred) {
  ordered_json doc;
  doc["dataset"] = pred.dataset;
  ordered_json pages = ordered_json::array();
  for (const PagePrediction &page: pred.pages) {
    ordered_json p;
    p["page_id"] = page.page_id;
    ordered_json molecules = ordered_json::array();
    for (const PredMolecule &m: page.molecules) {
      ordered_json mol;
      if (m.id)
        mol["id"] = *m.id;
      mol["bbox"] = bbox_json(m.box.bbox);
      mol["score"] = m.box.score;
      mol["structure"] = { { "format", std::string(to_string(m.format)) },
                           { "value", m.structure } };
      molecules.push_back(std::move(mol));
    }
    p["molecules"] = std::move(molecules);
    ordered_json reactions = ordered_json::array();
    for (const AnnotatedReaction &rxn: page.reactions)
      reactions.push_back(reaction_json(rxn));
    p["reactions"] = std::move(reactions);
    pages.push_back(std::move(p));
  }
  doc["pages"] = std::move(pages);
  return doc;
}

std::vector<AlignedPage> align_pages(const GroundTruth &gt,
                                     const Predictions &pred) {
  std::map<std::string, const PagePrediction *> by_id;
  for (const PagePrediction &page: pred.pages)
    by_id.emplace(page.page_id, &page);

  std::vector<AlignedPage> aligned;
  std::vector<std::string> missing_pred, missing_gt;
  std::set<std::string> gt_ids;
  for (const PageAnnotation &page: gt.pages) {
    gt_ids.insert(page.page_id);
    auto it = by_id.find(page.page_id);
    if (it == by_id.end()) {
      missing_pred.push_back(page.page_id);
      continue;
    }
    aligned.push_back({ &page, it->second });
  }
  for (const auto &[id, page]: by_id) {
    if (!gt_ids.count(id))
      missing_gt.push_back(id);
  }

  if (!missing_pred.empty() || !missing_gt.empty()) {
    std::string message;
    auto list = [](const std::vector<std::string> &ids) {
      std::string out;
      for (const auto &id: ids)
        out += (out.empty() ? "" : ", ") + id;
      return out;
    };
    if (!missing_pred.empty())
      message += "pages missing from predictions: " + list(missing_pred);
    if (!missing_gt.empty())
      message += std::string(message.empty() ? "" : "; ")
                 + "pages missing from ground truth: " + list(missing_gt);
    throw CorpusError(CorpusErrorKind::kPageMismatch, "", "", message);
  }

  std::sort(aligned.begin(), aligned.end(),
            [](const AlignedPage &a, const AlignedPage &b) {
              return a.gt->page_id < b.gt->page_id;
            });
  return aligned;
}

CorpusStats corpus_stats(const GroundTruth &gt) {
  CorpusStats stats;
  for (const PageAnnotation &page: gt.pages) {
    ++stats.n_pages;
    stats.n_molecules += static_cast<long>(page.molecules.size());
    stats.n_reactions += static_cast<long>(page.reactions.size());
  }
  return stats;
}

std::vector<LabeledStats> corpus_stats_by_dataset(const GroundTruth &gt) {
  std::vector<LabeledStats> rows;
  for (const PageAnnotation &page: gt.pages) {
    const std::string &label = gt.label(page);
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const LabeledStats &r) {
                             return r.dataset == label;
                           });
    if (it == rows.end()) {
      rows.push_back({ label, {} });
      it = rows.end() - 1;
    }
    ++it->stats.n_pages;
    it->stats.n_molecules += static_cast<long>(page.molecules.size());
    it->stats.n_reactions += static_cast<long>(page.reactions.size());
  }
  return rows;
}

std::string with_thousands(long value) {
  std::string digits = std::to_string(value < 0 ? -value : value);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0)
      out += ',';
    out += digits[i];
  }
  return value < 0 ? "-" + out : out;
}

std::string format_stats_table(const std::vector<LabeledStats> &rows) {
  std::size_t label_width = 7;
  for (const auto &row: rows)
    label_width = std::max(label_width, row.dataset.size());

  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s  %9s  %13s  %13s\n",
                static_cast<int>(label_width), "Dataset", "# Pages",
                "# Molecules", "# Reactions");
  out << buf;
  for (const auto &row: rows) {
    std::snprintf(buf, sizeof(buf), "%-*s  %9s  %13s  %13s\n",
                  static_cast<int>(label_width), row.dataset.c_str(),
                  with_thousands(row.stats.n_pages).c_str(),
                  with_thousands(row.stats.n_molecules).c_str(),
                  with_thousands(row.stats.n_reactions).c_str());
    out << buf;
  }
  return out.str();
}

}  // namespace chemeval
