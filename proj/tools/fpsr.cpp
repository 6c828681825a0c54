// fpsr: command line front end.
//
// Exit codes: 0 ok, 1 I/O, 2 parse, 3 check, 4 runtime, 5 contract.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <set>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fps/batch.hpp"
#include "fps/bounds.hpp"
#include "fps/checker.hpp"
#include "fps/corpus.hpp"
#include "fps/structure_io.hpp"
#include "fps/transform.hpp"

using namespace fps;
namespace fs = std::filesystem;

namespace {

struct Exit {
  int code;
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Exit{1, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw Exit{1, "cannot write " + path.string()};
}

SourceUnit load_unit(const std::string& path) {
  try {
    return parse_program(slurp(path));
  } catch (const ParseError& e) {
    throw Exit{2, path + ":" + e.what()};
  }
}

Structure load_structure(const std::string& path) {
  try {
    return parse_structure(slurp(path));
  } catch (const ParseError& e) {
    throw Exit{2, path + ":" + e.what()};
  }
}

SourceUnit load_checked(const std::string& path) {
  SourceUnit u = load_unit(path);
  CheckReport r = check(u);
  if (!r.accepted()) throw Exit{3, r.format(path)};
  return u;
}

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

TraceLevel trace_level(const std::string& s) {
  if (s == "none") return TraceLevel::None;
  if (s == "loops") return TraceLevel::Loops;
  if (s == "full") return TraceLevel::Full;
  throw Exit{5, "unknown trace level '" + s + "'"};
}


}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run, check and transform programs over finite partial structures."};
  app.require_subcommand(1);

  std::string file, second, input_file, out_file, trace_file, metrics_file, trace_level_name = "full", eval;
  std::string out_dir = "corpus", kind, op = "add", link, keep_in, keep_out;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0, fuel = 0;
  unsigned c = 1, l = 1;
  int jobs = 0;
  bool certify_flag = false, serial = false;

  auto* cmd_check = app.add_subcommand("check", "Check an STR unit and list errors");
  cmd_check->add_option("file", file)->required();

  auto* cmd_run = app.add_subcommand("run", "Run a unit on a structure");
  cmd_run->add_option("file", file)->required();
  cmd_run->add_option("--input", input_file, "input structure file")->required();
  cmd_run->add_option("--out", out_file, "output structure file (default stdout)");
  cmd_run->add_option("--trace", trace_file, "write the trace here");
  cmd_run->add_option("--trace-level", trace_level_name, "loops or full");
  cmd_run->add_option("--metrics", metrics_file, "write a one-line metrics record here");
  cmd_run->add_option("--seed", seed, "allocator seed");
  cmd_run->add_option("--fuel", fuel, "step limit (0 for none)");
  cmd_run->add_flag("--certify", certify_flag, "compare the run with its certificate (exit 5 if exceeded)");

  auto* cmd_bound = app.add_subcommand("bound", "Print time and space certificates");
  cmd_bound->add_option("file", file)->required();
  cmd_bound->add_option("--eval", eval, "comma list n0,n1,... to evaluate the certificate at");

  auto* cmd_compose = app.add_subcommand("compose", "Sequential composition of two units");
  cmd_compose->add_option("first", file)->required();
  cmd_compose->add_option("second", second)->required();
  cmd_compose->add_option("--link", link, "ids passed from first to second (default: ids declared in both)");
  cmd_compose->add_option("--inputs", keep_in, "input ids of the first unit kept by name (default: the rest of it)");
  cmd_compose->add_option("--outputs", keep_out, "output ids of the second unit kept by name (default: the rest of it)");
  cmd_compose->add_option("--out", out_file);

  auto* cmd_ramify = app.add_subcommand("ramify", "Translate an ST unit to STR");
  cmd_ramify->add_option("file", file)->required();
  cmd_ramify->add_option("-c,--coeff", c, "clock factor");
  cmd_ramify->add_option("-l,--degree", l, "clock exponent");
  cmd_ramify->add_option("--out", out_file);

  auto* cmd_gen = app.add_subcommand("gen", "Print a generated unit");
  cmd_gen->add_option("kind", kind, "duplicator, spawn, enumerator, arith, sort, doubling or clock")->required();
  cmd_gen->add_option("--op", op, "arith operation: add or mult");
  cmd_gen->add_option("-c,--coeff", c, "clock factor");
  cmd_gen->add_option("-l,--degree", l, "clock exponent");
  cmd_gen->add_option("--out", out_file);

  auto* cmd_corpus = app.add_subcommand("corpus", "Write every corpus unit to a directory");
  cmd_corpus->add_option("--out", out_dir);

  auto* cmd_batch = app.add_subcommand("batch", "Run a unit over many structures");
  cmd_batch->add_option("file", file)->required();
  cmd_batch->add_option("inputs", inputs)->required();
  cmd_batch->add_option("--jobs", jobs, "threads (0 for the runtime default)");
  cmd_batch->add_option("--seed", seed);
  cmd_batch->add_option("--fuel", fuel);
  cmd_batch->add_flag("--serial", serial, "use the serial reference runner");

  CLI11_PARSE(app, argc, argv);

  auto emit = [&](const std::string& text) {
    if (out_file.empty())
      std::cout << text;
    else
      spill(out_file, text);
  };

  try {
    ExecConfig cfg;
    cfg.seed = seed;
    if (fuel) cfg.fuel = fuel;

    if (*cmd_check) {
      SourceUnit u = load_unit(file);
      CheckReport r = check(u);
      std::cout << r.format(file);
      if (!r.accepted()) return 3;
      std::cout << file << ": ok, " << r.loops.size() << " loop(s), max rank " << max_rank(u) << "\n";
    } else if (*cmd_run) {
      SourceUnit u = load_unit(file);
      if (u.dialect != Dialect::ST) {
        CheckReport r = check(u);
        if (!r.accepted()) throw Exit{3, r.format(file)};
      }
      Structure in = load_structure(input_file);
      if (!trace_file.empty()) cfg.trace = trace_level(trace_level_name);
      RunResult r = run(u, in, cfg);
      emit(print_structure(r.output));
      if (!trace_file.empty()) {
        std::string text;
        for (const auto& e : r.trace) text += format_trace_event(e) + "\n";
        spill(trace_file, text);
      }
      if (!metrics_file.empty()) spill(metrics_file, format_metrics(r.metrics) + "\n");
      if (certify_flag) {
        Verdict v = certify_run(u, in, r.metrics);
        std::cerr << v.str() << "\n";
        if (!v.pass) return 5;
      }
    } else if (*cmd_bound) {
      Certificate cert = certify(load_checked(file));
      std::cout << format_certificate(cert);
      if (!eval.empty()) {
        std::vector<BigInt> n;
        for (const auto& x : split(eval)) {
          try {
            n.push_back(BigInt(std::stoull(x)));
          } catch (const std::exception&) {
            throw Exit{5, "--eval expects natural numbers, got '" + x + "'"};
          }
        }
        n.resize(std::max(n.size(), cert.space.size()), 0);
        std::cout << "M(" << eval << ") = " << cert.time.eval(n) << "\n";
        for (std::size_t j = 0; j < cert.space.size(); ++j)
          std::cout << "Z" << j << "(" << eval << ") = " << cert.space[j].eval(n) << "\n";
      }
    } else if (*cmd_compose) {
      SourceUnit p1 = load_checked(file), p2 = load_checked(second);
      std::vector<std::string> links = split(link), ins = split(keep_in), outs = split(keep_out);
      if (links.empty())
        for (const auto& f : p2.vocabulary.ids())
          if (p1.vocabulary.contains(f.name)) links.push_back(f.name);
      if (links.empty()) throw Exit{5, "the units share no ids; pass --link"};
      std::set<std::string> linked(links.begin(), links.end());
      if (ins.empty())
        for (const auto& f : p1.vocabulary.ids())
          if (!linked.count(f.name)) ins.push_back(f.name);
      if (outs.empty())
        for (const auto& f : p2.vocabulary.ids())
          if (!linked.count(f.name)) outs.push_back(f.name);
      // Interface ids of one side, with the rank they share there.
      auto side = [](const SourceUnit& u, const std::vector<std::string>& names, const SourceUnit& other) {
        Vocabulary v;
        std::optional<unsigned> rank;
        for (const auto& n : names) {
          const SourceUnit& src = u.vocabulary.contains(n) ? u : other;
          if (!src.vocabulary.contains(n)) throw Exit{5, "'" + n + "' is declared in neither unit"};
          const FunctionId& f = src.vocabulary.at(n);
          if (&src == &u) {
            if (rank && f.rank != rank) throw Exit{5, "interface ids of one unit must share a rank; pass --link"};
            rank = f.rank;
          }
          v.add({f.name, f.arity, std::nullopt});
        }
        return std::pair{v, rank.value_or(0)};
      };
      auto [lv1, r1] = side(p1, links, p2);
      auto [lv2, r2] = side(p2, links, p1);
      if (!std::any_of(links.begin(), links.end(), [&](const auto& n) { return p1.vocabulary.contains(n); })) r1 = r2;
      auto [iv, ir] = side(p1, ins, p2);
      auto [ov, orank] = side(p2, outs, p1);
      SourceUnit u = compose(p1, {iv, ir, lv1, r1}, p2, {lv2, r2, ov, orank});
      CheckReport r = check(u);
      if (!r.accepted()) throw Exit{5, "composed unit fails the checker:\n" + r.format("compose")};
      emit(print_program(u));
    } else if (*cmd_ramify) {
      emit(print_program(ramify(load_unit(file), c, l)));
    } else if (*cmd_gen) {
      std::vector<CorpusEntry> corpus = str_corpus();
      SourceUnit u;
      if (kind == "duplicator" || kind == "spawn" || kind == "enumerator")
        u = corpus_entry(corpus, kind).unit;
      else if (kind == "arith" && op == "add")
        u = gen_add();
      else if (kind == "arith" && op == "mult")
        u = gen_mult();
      else if (kind == "arith")
        throw Exit{5, "unknown arith operation '" + op + "'"};
      else if (kind == "sort")
        u = insertion_sort_unit();
      else if (kind == "doubling")
        u = gen_doubling();
      else if (kind == "clock")
        u = gen_clock(c, l, Vocabulary({{"c", 0, std::nullopt}, {"f", 1, std::nullopt}}));
      else
        throw Exit{5, "unknown generator '" + kind + "'"};
      emit(print_program(u));
    } else if (*cmd_corpus) {
      fs::create_directories(fs::path(out_dir) / "st");
      for (const auto& e : str_corpus()) spill(fs::path(out_dir) / (e.name + ".str"), print_program(e.unit));
      for (const auto& e : st_corpus()) spill(fs::path(out_dir) / "st" / (e.name + ".st"), print_program(e.unit));
    } else if (*cmd_batch) {
      SourceUnit u = load_unit(file);
      std::vector<Structure> ins;
      for (const auto& p : inputs) ins.push_back(load_structure(p));
      auto out = serial ? run_batch_serial(u, ins, cfg) : run_batch(u, ins, cfg, jobs);
      int code = 0;
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].ok()) {
          std::cout << inputs[i] << " " << format_metrics(out[i].result->metrics) << "\n";
        } else {
          std::cout << inputs[i] << " error " << out[i].error << "\n";
          code = 4;
        }
      }
      return code;
    }
  } catch (const Exit& e) {
    std::cerr << e.message << (e.message.empty() || e.message.back() == '\n' ? "" : "\n");
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const RuntimeError& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 5;
  }
  return 0;
}
