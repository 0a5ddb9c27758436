#pragma once

#include "svtan/classify.hpp"
#include "svtan/toric_ideal.hpp"

#include <string>
#include <vector>

namespace svtan {

// JSON layout is described in the README. Throws FormatError on malformed input.
std::string report_to_json(const ClassificationReport& r, int indent = 2);
ClassificationReport report_from_json(const std::string& text);

std::string sweep_to_json(const SweepResult& s, int indent = 2);
std::string examples_to_json(const ExampleSuite& suite, int indent = 2);
std::string relations_to_json(const LabeledComplex& c, const std::vector<BinomialRelation>& relations, int indent = 2);

// k,a,b,n,rank,smooth,normal,cm,gorenstein,clause,agreement
std::string csv_header();
std::string csv_row(const ClassificationReport& r);

std::string report_to_text(const ClassificationReport& r);
std::string summary_to_text(const SweepSummary& s);
std::string examples_to_text(const ExampleSuite& suite);

}  // namespace svtan
