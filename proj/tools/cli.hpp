// SPDX-License-Identifier: Apache-2.0
#pragma once

// restnamer command-line front end.
//
// Exit codes: 0 success, 1 parse or I/O error, 2 configuration error,
// 3 naming or rewrite constraint violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "restnamer/restnamer.hpp"

namespace restnamer::cli {

namespace fs = std::filesystem;

inline constexpr const char* kMaxLenEnv = "RESTNAMER_MAX_LEN";

enum class Format { Json, Text, Csv, Markdown };

struct Invocation {
  std::string command;
  std::vector<std::string> inputs;
  std::string convention = "condition";
  std::size_t max_len = 120;
  bool max_len_given = false;
  std::optional<std::string> templates_file;
  std::optional<std::string> fault_labels_file;
  bool lenient = false;
  bool no_suppress = false;
  bool sorted = false;
  bool in_place = false;
  std::string truncate = "char";
  std::optional<std::string> output;
  std::string format = "text";
  std::optional<std::string> dialect;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(path + ": read failed");
  return ss.str();
}

/// Writes through a temporary file in the same directory, then renames over the target.
inline void write_file_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError(path.string() + ": cannot create directory: " + ec.message());
  auto tmp = path;
  tmp += ".restnamer-tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(tmp.string() + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError(tmp.string() + ": write failed");
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError(path.string() + ": cannot replace file: " + ec.message());
  }
}

/// out_dir joined with the input path made relative ("/a/b.java" -> out/a/b.java, "../x.java" -> out/x.java).
inline fs::path mirror_path(const fs::path& out_dir, const fs::path& input) {
  fs::path rel;
  for (const auto& part : input.lexically_normal().relative_path()) {
    if (part == "..") continue;
    rel /= part;
  }
  return out_dir / rel;
}

inline bool is_ir_path(const std::string& path) { return fs::path(path).extension() == ".json"; }

inline std::vector<std::string> read_templates(const std::string& path) {
  std::vector<std::string> out;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    auto tmpl = line.substr(first, last - first + 1);
    if (!is_well_formed_template(tmpl)) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed path template '" + tmpl + "'");
    }
    out.push_back(std::move(tmpl));
  }
  return out;
}

inline std::map<std::string, std::string> read_fault_labels(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path + ": expected an object of code -> label");
  auto labels = default_fault_labels();
  for (const auto& [code, label] : j.items()) {
    if (!label.is_string()) throw ConfigError(path + ": label for '" + code + "' is not a string");
    labels[code] = label.get<std::string>();
  }
  return labels;
}

// ---------------------------------------------------------------------------
// Tables

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string markdown_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

inline void write_table(std::ostream& out, Format format, const Table& t) {
  switch (format) {
    case Format::Csv: {
      // RFC 4180: CRLF record separators, quotes doubled inside quoted fields.
      auto record = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
        out << "\r\n";
      };
      record(t.headers);
      for (const auto& r : t.rows) record(r);
      return;
    }
    case Format::Markdown: {
      auto record = [&](const std::vector<std::string>& cells) {
        out << "|";
        for (const auto& c : cells) out << " " << markdown_cell(c) << " |";
        out << "\n";
      };
      record(t.headers);
      out << "|";
      for (std::size_t i = 0; i < t.headers.size(); ++i) out << " --- |";
      out << "\n";
      for (const auto& r : t.rows) record(r);
      return;
    }
    case Format::Json: {
      Json arr = Json::array();
      for (const auto& r : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < t.headers.size(); ++i) obj[t.headers[i]] = r[i];
        arr.push_back(std::move(obj));
      }
      out << arr.dump(2) << "\n";
      return;
    }
    case Format::Text: {
      std::vector<std::size_t> width(t.headers.size());
      for (std::size_t i = 0; i < t.headers.size(); ++i) width[i] = t.headers[i].size();
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
      }
      auto record = [&](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          line += cells[i];
          if (i + 1 < cells.size()) line += std::string(width[i] - cells[i].size() + 2, ' ');
        }
        out << line << "\n";
      };
      record(t.headers);
      for (const auto& r : t.rows) record(r);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Pipeline


class Runner {
 public:
  Runner(Invocation inv, std::ostream& out, std::ostream& err) : inv_(std::move(inv)), out_(out), err_(err) {}

  int run() {
    configure();
    if (inv_.command == "parse") return run_parse();
    if (inv_.command == "name") return run_name();
    if (inv_.command == "report") return run_report();
    if (inv_.command == "sort") return run_sort();
    if (inv_.command == "apply") return run_apply();
    throw ConfigError("unknown command '" + inv_.command + "'");
  }

 private:
  void configure() {
    if (inv_.inputs.empty()) throw ConfigError("no input files");
    auto convention = parse_convention(inv_.convention);
    if (!convention) throw ConfigError("unknown convention '" + inv_.convention + "'");
    config_.convention = *convention;
    config_.max_name_length = inv_.max_len;
    if (!inv_.max_len_given) {
      if (const char* env = std::getenv(kMaxLenEnv); env && *env) {
        try {
          std::size_t used = 0;
          auto value = std::stoul(env, &used);
          if (used != std::string(env).size()) throw std::invalid_argument(env);
          config_.max_name_length = value;
        } catch (const std::exception&) {
          throw ConfigError(std::string(kMaxLenEnv) + " is not a positive integer: '" + env + "'");
        }
      }
    }
    config_.suppress_majority_mechanism = !inv_.no_suppress;
    config_.truncation = inv_.truncate == "token" ? Truncation::TokenBoundary : Truncation::Character;
    if (inv_.fault_labels_file) config_.fault_label_map = read_fault_labels(*inv_.fault_labels_file);
    if (inv_.templates_file) templates_ = read_templates(*inv_.templates_file);
    if (inv_.format == "json") format_ = Format::Json;
    else if (inv_.format == "csv") format_ = Format::Csv;
    else if (inv_.format == "markdown") format_ = Format::Markdown;
    else format_ = Format::Text;
    config_.validate();
    if (inv_.in_place && inv_.output) throw ConfigError("--in-place and --out are mutually exclusive");
  }

  ParseOptions parse_options() const {
    ParseOptions options;
    options.lenient = inv_.lenient;
    return options;
  }

  static SourceFile source(const std::string& path) { return SourceFile{path, read_file(path), dialect_for_path(path)}; }

  void warn(const ParseResult& parsed) const {
    for (const auto& w : parsed.warnings) err_ << w.str() << "\n";
  }

  TestSuite load(const std::string& path) const {
    TestSuite suite;
    if (is_ir_path(path)) {
      suite = read_ir(read_file(path), IrReadOptions{inv_.lenient});
    } else {
      auto parsed = parse_source(source(path), parse_options());
      warn(parsed);
      suite = std::move(parsed.suite);
    }
    if (templates_) suite.templates = templates_;
    return suite;
  }

  /// stdout, a single --out file, or --out as a directory when there are several inputs.
  void emit(const std::string& input, const std::string& content, const std::string& extension) {
    if (!inv_.output) {
      out_ << content;
      return;
    }
    if (inv_.inputs.size() == 1) {
      write_file_atomic(*inv_.output, content);
      return;
    }
    auto target = mirror_path(*inv_.output, input);
    target.replace_extension(extension);
    write_file_atomic(target, content);
  }

  /// Rewritten sources go in place, to a mirrored path under --out, or to stdout.
  void emit_source(const std::string& input, const std::string& content, const std::string& extension = {}) {
    if (inv_.in_place) {
      write_file_atomic(input, content);
    } else if (inv_.output) {
      auto target = mirror_path(*inv_.output, input);
      if (!extension.empty()) target.replace_extension(extension);
      write_file_atomic(target, content);
    } else {
      out_ << content;
    }
  }

  int run_parse() {
    for (const auto& path : inv_.inputs) {
      emit(path, write_ir(load(path)), ".json");
    }
    return 0;
  }

  int run_name() {
    Table table;
    bool multi = inv_.inputs.size() > 1;
    table.headers = {"original_name", "generated_name"};
    if (multi) table.headers.insert(table.headers.begin(), "file");
    for (const auto& path : inv_.inputs) {
      auto suite = load(path);
      if (inv_.sorted) suite = sort_suite(suite);
      auto names = name_suite(suite, config_);
      for (std::size_t i = 0; i < names.size(); ++i) {
        std::vector<std::string> row{suite.tests[i].original_name, names[i].rendered};
        if (multi) row.insert(row.begin(), path);
        table.rows.push_back(std::move(row));
      }
    }
    if (format_ == Format::Text) {
      for (const auto& r : table.rows) {
        out_ << (multi ? r[0] + ": " : "") << r[multi ? 1 : 0] << " -> " << r[multi ? 2 : 1] << "\n";
      }
      return 0;
    }
    write_table(out_, format_, table);
    return 0;
  }

  int run_report() {
    Table table;
    bool multi = inv_.inputs.size() > 1;
    table.headers = {"original_name"};
    if (multi) table.headers.insert(table.headers.begin(), "file");
    for (auto c : kAllConventions) table.headers.emplace_back(to_string(c));
    for (const auto& path : inv_.inputs) {
      auto suite = load(path);
      if (inv_.sorted) suite = sort_suite(suite);
      std::vector<std::vector<GeneratedName>> columns;
      for (auto c : kAllConventions) {
        auto cfg = config_;
        cfg.convention = c;
        columns.push_back(name_suite(suite, cfg));
      }
      for (std::size_t i = 0; i < suite.tests.size(); ++i) {
        std::vector<std::string> row{suite.tests[i].original_name};
        if (multi) row.insert(row.begin(), path);
        for (const auto& col : columns) row.push_back(col[i].rendered);
        table.rows.push_back(std::move(row));
      }
    }
    write_table(out_, format_, table);
    return 0;
  }

  int run_sort() {
    for (const auto& path : inv_.inputs) {
      if (is_ir_path(path)) {
        emit_source(path, write_ir(sort_suite(load(path))));
        continue;
      }
      auto edit = sort_source(source(path), parse_options(), templates_);
      warn(edit.parsed);
      emit_source(path, edit.text);
    }
    return 0;
  }

  int run_apply() {
    for (const auto& path : inv_.inputs) {
      if (is_ir_path(path)) {
        if (inv_.in_place) throw ConfigError(path + ": --in-place needs source input, not IR JSON");
        auto suite = load(path);
        auto sorted = sort_suite(suite);
        auto names = name_suite(sorted, config_);
        auto dialect = suite.source_dialect.value_or(Dialect::JavaLike);
        if (inv_.dialect) dialect = *inv_.dialect == "kotlin" ? Dialect::KotlinLike : Dialect::JavaLike;
        emit_source(path, emit_suite(sorted, names, dialect), dialect == Dialect::KotlinLike ? ".kt" : ".java");
        continue;
      }
      auto edit = apply_source(source(path), config_, parse_options(), templates_);
      warn(edit.parsed);
      emit_source(path, edit.text);
    }
    return 0;
  }

  Invocation inv_;
  std::ostream& out_;
  std::ostream& err_;
  NamingConfig config_;
  Format format_ = Format::Text;
  std::optional<std::vector<std::string>> templates_;
};

// ---------------------------------------------------------------------------
// Argument parsing

inline void add_common(CLI::App* sub, Invocation& inv, bool rewrite) {
  sub->add_option("inputs", inv.inputs, "Source files (.java/.kt) or IR JSON files (.json)")->required();
  sub->add_flag("--lenient", inv.lenient, "Degrade unsupported constructs to warnings; accept unknown JSON fields");
  sub->add_option("--templates", inv.templates_file, "Path templates, one per line, '#' comments");
  sub->add_option("-o,--out", inv.output,
                  rewrite ? "Output directory; each input is written under it at its own relative path"
                          : "Output file, or directory for several inputs");
}

inline void add_naming(CLI::App* sub, Invocation& inv, CLI::Option*& max_len_opt) {
  sub->add_option("--convention", inv.convention, "Naming convention")
      ->check(CLI::IsMember({"number", "result", "query", "condition"}));
  max_len_opt = sub->add_option("--max-len", inv.max_len, "Maximum name length (env " + std::string(kMaxLenEnv) + ")");
  sub->add_option("--fault-labels", inv.fault_labels_file, "JSON object mapping fault codes to labels");
  sub->add_flag("--no-suppress", inv.no_suppress, "Keep mechanisms shared by most tests of the class");
  sub->add_option("--truncate", inv.truncate, "Truncation mode")->check(CLI::IsMember({"char", "token"}));
}

inline void add_format(CLI::App* sub, Invocation& inv) {
  sub->add_option("--format", inv.format, "Output format")->check(CLI::IsMember({"json", "text", "csv", "markdown"}));
  sub->add_flag("--sorted", inv.sorted, "Sort the suite before naming");
}

/// Entry point shared by the executable and the tests. args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Descriptive names and ordering for generated REST API test suites", "restnamer"};
  app.require_subcommand(1);
  Invocation inv;
  std::vector<CLI::Option*> max_len_opts;

  struct CommandInfo {
    const char* name;
    const char* help;
    bool naming;
    bool format;
    bool rewrite;
  };
  const CommandInfo commands[] = {
      {"parse", "Parse test sources into IR JSON", false, false, false},
      {"name", "Print generated names", true, true, false},
      {"report", "Side-by-side names under every convention", true, true, false},
      {"sort", "Reorder tests by path, status group and verb", false, false, true},
      {"apply", "Sort, name and rewrite test sources", true, false, true},
  };
  for (const auto& spec : commands) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    CLI::Option* max_len = nullptr;
    add_common(sub, inv, spec.rewrite);
    if (spec.naming) add_naming(sub, inv, max_len);
    if (spec.format) add_format(sub, inv);
    if (spec.rewrite) sub->add_flag("--in-place", inv.in_place, "Rewrite the input files atomically");
    if (std::string(spec.name) == "apply") {
      sub->add_option("--dialect", inv.dialect, "Dialect for IR input")->check(CLI::IsMember({"java", "kotlin"}));
    }
    if (max_len) max_len_opts.push_back(max_len);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "restnamer: " << e.what() << "\n";
    return 2;
  }
  inv.command = app.get_subcommands().front()->get_name();
  for (auto* opt : max_len_opts) inv.max_len_given |= opt->count() > 0;

  try {
    return Runner(std::move(inv), out, err).run();
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const IrError& e) {
    err << "restnamer: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "restnamer: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    err << "restnamer: " << e.what() << "\n";
    return 2;
  } catch (const NamingError& e) {
    err << "restnamer: " << e.what() << "\n";
    return 3;
  } catch (const RewriteError& e) {
    err << "restnamer: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "restnamer: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace restnamer::cli
