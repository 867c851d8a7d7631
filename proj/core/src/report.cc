// Copyright 2026 The rehab-extract Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "rehab/evaluator.h"
#include "rehab/serialization.h"

namespace rehab {

using nlohmann::ordered_json;

namespace {

const std::vector<std::string>& CanonicalOrder() {
  static const std::vector<std::string> order = {"rules-ner", "rules-sequence", "logreg",
                                                 "svm", "ada", "gb"};
  return order;
}

std::string Header(const std::string& method) {
  static const std::map<std::string, std::string> names = {
      {"rules-ner", "Rules NER"}, {"rules-sequence", "Rules Sequence"},
      {"logreg", "LR"},           {"svm", "SVM"},
      {"ada", "AdaBoost"},        {"gb", "Gradient Boosting"}};
  auto it = names.find(method);
  return it == names.end() ? method : it->second;
}

std::string Fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

ordered_json PrfJson(const Prf& p) {
  ordered_json j;
  j["tp"] = p.tp;
  j["fp"] = p.fp;
  j["fn"] = p.fn;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  return j;
}

// Full-scale reference figures from a private clinical corpus, kept for
// comparison only; the synthetic corpus cannot reproduce them.
ordered_json ReferenceScores() {
  ordered_json j;
  j["note"] = "full-scale reference results from a private corpus; not reproducible here";
  j["table_average_f1"] = {{"rules-ner", 0.878}, {"rules-sequence", 0.891}, {"logreg", 0.861},
                           {"svm", 0.835},       {"ada", 0.875},            {"gb", 0.883}};
  j["numeric_f1"] = {{"duration", 0.65}, {"sets", 0.58}, {"reps", 0.88}};
  j["prompt"] = {{"precision", 0.29}, {"recall", 0.84}, {"f1", 0.38}, {"concepts", 67}};
  return j;
}

}  // namespace

EvalReport BuildReport(std::span<const MethodResult> results, const GoldCorpus& gold,
                       const Ontology& ontology) {
  std::vector<const MethodResult*> ordered;
  for (const std::string& name : CanonicalOrder()) {
    for (const MethodResult& r : results) {
      if (r.name == name) ordered.push_back(&r);
    }
  }
  std::vector<const MethodResult*> others;
  for (const MethodResult& r : results) {
    if (std::find(CanonicalOrder().begin(), CanonicalOrder().end(), r.name) ==
        CanonicalOrder().end()) {
      others.push_back(&r);
    }
  }
  std::sort(others.begin(), others.end(),
            [](const MethodResult* a, const MethodResult* b) { return a->name < b->name; });
  ordered.insert(ordered.end(), others.begin(), others.end());

  EvalReport report;
  for (const MethodResult* r : ordered) {
    report.methods.push_back(r->name);
    report.method_kinds.push_back(r->kind);
    if (!r->numeric.empty()) report.numeric[r->name] = r->numeric;
  }

  std::map<std::string, Support> support = ConceptSupport(gold, ontology);
  for (const std::string& id : ontology.BinaryConceptIds()) {
    const Support& s = support[id];
    if (s.train < kMinReportableSupport || s.test < kMinReportableSupport) {
      report.omitted.push_back({id, s,
                                s.train < kMinReportableSupport
                                    ? "fewer than 10 positive training sequences"
                                    : "fewer than 10 positive test sequences"});
      continue;
    }
    ReportRow row;
    row.concept_id = id;
    row.category = ontology.CategoryOf(id).name;
    row.display_name = ontology.Lookup(id).display_name;
    row.support = s;
    double best = -1.0;
    for (const MethodResult* r : ordered) {
      auto it = r->per_concept.find(id);
      Prf p = it == r->per_concept.end() ? Prf{} : it->second;
      row.scores.push_back(p);
      if (r->kind == MethodKind::kSequence) best = std::max(best, p.f1);
    }
    for (std::size_t m = 0; m < ordered.size(); ++m) {
      row.best.push_back(ordered[m]->kind == MethodKind::kSequence &&
                         row.scores[m].f1 == best);
    }
    report.rows.push_back(std::move(row));
  }

  for (std::size_t m = 0; m < ordered.size(); ++m) {
    Prf macro;
    for (const ReportRow& row : report.rows) {
      const Prf& p = row.scores[m];
      macro.tp += p.tp;
      macro.fp += p.fp;
      macro.fn += p.fn;
      macro.precision += p.precision;
      macro.recall += p.recall;
      macro.f1 += p.f1;
    }
    if (!report.rows.empty()) {
      const auto n = static_cast<double>(report.rows.size());
      macro.precision /= n;
      macro.recall /= n;
      macro.f1 /= n;
    }
    report.macro.push_back(macro);
  }
  return report;
}

std::string ReportToJson(const EvalReport& report) {
  ordered_json j;
  j["schema"] = kReportSchema;
  ordered_json methods = ordered_json::array();
  for (std::size_t m = 0; m < report.methods.size(); ++m) {
    methods.push_back({{"name", report.methods[m]},
                       {"kind", report.method_kinds[m] == MethodKind::kNer ? "ner" : "sequence"}});
  }
  j["methods"] = methods;
  ordered_json rows = ordered_json::array();
  for (const ReportRow& row : report.rows) {
    ordered_json r;
    r["concept_id"] = row.concept_id;
    r["category"] = row.category;
    r["display_name"] = row.display_name;
    r["train_support"] = row.support.train;
    r["test_support"] = row.support.test;
    ordered_json scores;
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      ordered_json s = PrfJson(row.scores[m]);
      s["best"] = static_cast<bool>(row.best[m]);
      scores[report.methods[m]] = s;
    }
    r["scores"] = scores;
    rows.push_back(r);
  }
  j["rows"] = rows;
  ordered_json macro;
  for (std::size_t m = 0; m < report.methods.size(); ++m) {
    macro[report.methods[m]] = PrfJson(report.macro[m]);
  }
  j["macro_average"] = macro;
  ordered_json omitted = ordered_json::array();
  for (const OmittedConcept& o : report.omitted) {
    omitted.push_back({{"concept_id", o.concept_id},
                       {"train_support", o.support.train},
                       {"test_support", o.support.test},
                       {"reason", o.reason}});
  }
  j["omitted_concepts"] = omitted;
  ordered_json numeric = ordered_json::object();
  for (const auto& [method, by_kind] : report.numeric) {
    ordered_json k;
    for (const auto& [kind, prf] : by_kind) k[std::string(NumericKindName(kind))] = PrfJson(prf);
    numeric[method] = k;
  }
  j["numeric"] = numeric;
  j["reference"] = ReferenceScores();
  return j.dump(2) + "\n";
}

std::string ReportToMarkdown(const EvalReport& report) {
  std::ostringstream out;
  out << "| Category | Concept |";
  for (const std::string& m : report.methods) out << ' ' << Header(m) << " |";
  out << " Training Set Size | Test Set Size |\n|---|---|";
  for (std::size_t m = 0; m < report.methods.size(); ++m) out << "---:|";
  out << "---:|---:|\n";
  std::string last_category;
  for (const ReportRow& row : report.rows) {
    out << "| " << (row.category == last_category ? "" : row.category) << " | "
        << row.display_name << " |";
    last_category = row.category;
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      std::string v = Fixed3(row.scores[m].f1);
      out << ' ' << (row.best[m] ? "**" + v + "**" : v) << " |";
    }
    out << ' ' << row.support.train << " | " << row.support.test << " |\n";
  }
  out << "| Average | |";
  for (const Prf& p : report.macro) out << ' ' << Fixed3(p.f1) << " |";
  out << " | |\n";

  if (!report.numeric.empty()) {
    out << "\nNumeric extraction (F1)\n\n| Method | Duration | Sets | Reps |\n|---|---:|---:|---:|\n";
    for (const auto& [method, by_kind] : report.numeric) {
      out << "| " << Header(method) << " |";
      for (NumericKind k : {NumericKind::kDuration, NumericKind::kSets, NumericKind::kReps}) {
        auto it = by_kind.find(k);
        out << ' ' << (it == by_kind.end() ? std::string("-") : Fixed3(it->second.f1)) << " |";
      }
      out << '\n';
    }
  }
  if (!report.omitted.empty()) {
    out << "\nOmitted concepts (train/test positives): ";
    for (std::size_t i = 0; i < report.omitted.size(); ++i) {
      const OmittedConcept& o = report.omitted[i];
      out << (i ? ", " : "") << o.concept_id << " (" << o.support.train << '/'
          << o.support.test << ')';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace rehab
