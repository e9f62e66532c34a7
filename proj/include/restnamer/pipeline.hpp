// SPDX-License-Identifier: Apache-2.0
#pragma once

// Whole-file operations: sort a parsed source file, or sort, name and rewrite it.

#include <optional>
#include <string>
#include <vector>

#include "restnamer/naming.hpp"
#include "restnamer/ordering.hpp"
#include "restnamer/parser.hpp"
#include "restnamer/rewriter.hpp"

namespace restnamer {

struct SourceEdit {
  std::string text;
  ParseResult parsed;          // the input as parsed
  TestSuite sorted;            // parsed.suite in ordering-key order
  std::vector<GeneratedName> names;  // parallel to sorted.tests; empty for sort-only
};

namespace pipeline_detail {

inline RewritePlan plan(const SourceFile& file, const ParseResult& parsed, const TestSuite& sorted) {
  RewritePlan p;
  p.file = file;
  p.blocks = parsed.blocks;
  for (const auto& t : sorted.tests) p.permutation.push_back(static_cast<std::size_t>(t.creation_index));
  return p;
}

inline ParseResult parse_with_templates(const SourceFile& file, const ParseOptions& options,
                                        const std::optional<std::vector<std::string>>& templates) {
  auto parsed = parse_source(file, options);
  if (templates) parsed.suite.templates = templates;
  return parsed;
}

}  // namespace pipeline_detail

/// Reorders the test methods of a source file without renaming them.
inline SourceEdit sort_source(const SourceFile& file, const ParseOptions& options = {},
                              const std::optional<std::vector<std::string>>& templates = std::nullopt) {
  SourceEdit out;
  out.parsed = pipeline_detail::parse_with_templates(file, options, templates);
  out.sorted = sort_suite(out.parsed.suite);
  out.text = reorder_in_place(pipeline_detail::plan(file, out.parsed, out.sorted));
  return out;
}

/// Sorts the test methods, names them in their new order and rewrites the file.
inline SourceEdit apply_source(const SourceFile& file, const NamingConfig& config, const ParseOptions& options = {},
                               const std::optional<std::vector<std::string>>& templates = std::nullopt) {
  SourceEdit out;
  out.parsed = pipeline_detail::parse_with_templates(file, options, templates);
  out.sorted = sort_suite(out.parsed.suite);
  out.names = name_suite(out.sorted, config);
  auto p = pipeline_detail::plan(file, out.parsed, out.sorted);
  for (std::size_t k = 0; k < out.sorted.tests.size(); ++k) {
    p.renames[static_cast<std::size_t>(out.sorted.tests[k].creation_index)] = out.names[k].rendered;
  }
  out.text = rewrite(p);
  return out;
}

}  // namespace restnamer
