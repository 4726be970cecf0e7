// Command-line front end. Machine output is JSON, human output is the
// file grammar; diagnostics go to stderr.
//
// Exit codes: 0 ok, 1 usage, 2 parse or IO error, 3 precondition failure
// (inconsistent input, invalid order, signature clash), 4 size guard.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqe/cqe.hpp"

namespace {

using nlohmann::json;
using namespace cqe;

struct IoError : Error {
  using Error::Error;
};

struct Options {
  std::string tbox, abox, policy, query;
  std::string format;
  std::size_t limit = kDefaultSizeGuard;
  std::size_t jobs = 1;
  bool verbose = false;
  // censor
  std::string order = "lex";
  std::string order_file;
  bool enumerate = false;
  // entail
  std::string semantics = "certain";
  // gen
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  GenBounds bounds;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError(path.string() + ": cannot write file");
}

template <class T, class F>
T load(const std::string& path, F parse) {
  if (path.empty()) return T{};
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.file_kind(), e.line(), e.column(), e.message(), e.token());
  }
}

struct Inputs {
  TBox tbox;
  Policy policy;
  ABox abox;
  std::vector<ConjunctiveQuery> queries;
};

Inputs load_inputs(const Options& o, bool need_query) {
  Inputs in;
  in.tbox = load<TBox>(o.tbox, [](std::string_view t) { return parse_tbox(t); });
  in.policy = load<Policy>(o.policy, [](std::string_view t) { return parse_policy(t); });
  in.abox = load<ABox>(o.abox, [](std::string_view t) { return parse_abox(t); });
  if (need_query) {
    if (o.query.empty()) throw IoError("--query is required for this command");
    in.queries = load<std::vector<ConjunctiveQuery>>(o.query, [](std::string_view t) { return parse_queries(t); });
    if (in.queries.empty()) throw IoError(o.query + ": no query found");
  }
  if (o.verbose)
    std::cerr << "loaded " << in.tbox.axioms.size() << " axioms, " << in.policy.denials.size() << " denials, "
              << in.abox.size() << " assertions, " << in.queries.size() << " queries\n";
  return in;
}

json atoms_json(const ABox& a) {
  json arr = json::array();
  for (const Atom& x : a) arr.push_back(to_string(x));
  return arr;
}

bool want_json(const Options& o, bool json_default) {
  return o.format.empty() ? json_default : o.format == "json";
}

// Runs f(i) for every index on up to `jobs` threads; results keep input order.
template <class R, class F>
std::vector<R> run_batch(std::size_t n, std::size_t jobs, F f) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

int cmd_consistency(const Options& o) {
  Inputs in = load_inputs(o, false);
  const bool ta = is_consistent(in.tbox, in.abox);
  const bool tpa = ta && is_policy_consistent(in.tbox, in.policy, in.abox);
  if (want_json(o, true)) {
    std::cout << json{{"tbox_abox_consistent", ta}, {"policy_consistent", tpa}}.dump() << '\n';
  } else {
    std::cout << "tbox_abox_consistent: " << (ta ? "true" : "false") << '\n'
              << "policy_consistent: " << (tpa ? "true" : "false") << '\n';
  }
  return 0;
}

int cmd_closure(const Options& o) {
  Inputs in = load_inputs(o, false);
  ABox cl = abox_closure(in.tbox, in.abox);
  if (want_json(o, false))
    std::cout << json{{"closure", atoms_json(cl)}}.dump() << '\n';
  else
    std::cout << serialize(cl);
  return 0;
}

int cmd_censor(const Options& o) {
  Inputs in = load_inputs(o, false);
  CensorContext ctx(in.tbox, in.policy, in.abox);
  std::vector<ABox> censors;
  std::string order = "lex";
  if (o.enumerate) {
    auto all = ctx.enumerate_optimal(o.limit);
    censors.assign(all.begin(), all.end());
    order = "all";
  } else if (!o.order_file.empty()) {
    ABox listed;
    std::vector<Atom> seq;
    std::string text = read_file(o.order_file);
    try {
      // Keep file order: parse line by line.
      std::istringstream lines(text);
      std::string line;
      std::size_t n = 0;
      while (std::getline(lines, line)) {
        ++n;
        ABox one = parse_abox(line);
        if (one.size() > 1) throw ParseError("order", n, 1, "one assertion per line expected", "");
        for (const Atom& a : one) seq.push_back(a);
      }
    } catch (const ParseError& e) {
      throw ParseError(o.order_file + ": order", e.line(), e.column(), e.message(), e.token());
    }
    censors.push_back(ctx.opt_ga_censor(AtomOrder::explicit_order(std::move(seq))));
    order = "file";
  } else {
    censors.push_back(ctx.opt_ga_censor());
  }
  json summary = {{"order", order}, {"closure_size", ctx.closure().size()}, {"count", censors.size()}};
  if (want_json(o, false)) {
    json arr = json::array();
    for (const auto& c : censors) arr.push_back(atoms_json(c));
    summary["censors"] = arr;
    std::cout << summary.dump() << '\n';
  } else {
    for (std::size_t i = 0; i < censors.size(); ++i) {
      if (o.enumerate) std::cout << "# censor " << i + 1 << '\n';
      std::cout << serialize(censors[i]);
    }
    std::cerr << summary.dump() << '\n';
  }
  return 0;
}

int cmd_entail(const Options& o) {
  Inputs in = load_inputs(o, true);
  const std::string& sem = o.semantics;
  std::optional<CensorContext> ctx;
  if (sem != "certain" && sem != "qib-fo") {
    ctx.emplace(in.tbox, in.policy, in.abox);
    if (sem == "ib") ctx->check_guard(o.limit);
  } else {
    Reasoner(in.tbox, in.abox.signature()).require_consistent(in.abox);
  }
  std::optional<ABox> censor;
  if (sem == "censor") censor = ctx->opt_ga_censor();

  struct Verdict {
    bool entailed = false;
    double ms = 0;
  };
  auto verdicts = run_batch<Verdict>(in.queries.size(), o.jobs, [&](std::size_t i) {
    const ConjunctiveQuery& q = in.queries[i];
    const auto start = std::chrono::steady_clock::now();
    bool v = false;
    if (sem == "certain") {
      v = cq_entailed(in.tbox, in.abox, q);
    } else if (sem == "ib") {
      v = ctx->ib_entails(q, o.limit);
    } else if (sem == "qib") {
      v = ctx->qib_entails(q);
    } else if (sem == "qib-fo") {
      v = eval_fo(qib_rewrite(q, in.tbox, in.policy), in.abox);
    } else {
      v = ctx->reasoner().entails_unchecked(AtomIndex(censor->atoms()), q);
    }
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    return Verdict{v, ms.count()};
  });
  for (const auto& v : verdicts) {
    if (want_json(o, true))
      std::cout << json{{"semantics", sem}, {"entailed", v.entailed}, {"elapsed_ms", v.ms}}.dump() << '\n';
    else
      std::cout << (v.entailed ? "true" : "false") << '\n';
  }
  return 0;
}

int cmd_rewrite(const Options& o) {
  Options no_abox = o;
  no_abox.abox.clear();
  Inputs in = load_inputs(no_abox, true);
  struct Out {
    std::string text;
    RewritingReport report;
  };
  auto outs = run_batch<Out>(in.queries.size(), o.jobs, [&](std::size_t i) {
    Out r;
    r.text = serialize(qib_rewrite(in.queries[i], in.tbox, in.policy, &r.report));
    return r;
  });
  for (const auto& r : outs) {
    json rep = {{"perfect_ref_size", r.report.perfect_ref_size},
                {"denial_rewritings", r.report.denial_rewritings},
                {"guard_count", r.report.guard_count},
                {"output_size", r.report.output_size}};
    std::string q = serialize(r.report.query);
    q.pop_back();
    if (want_json(o, false)) {
      std::cout << json{{"query", q}, {"rewriting", r.text}, {"report", rep}}.dump() << '\n';
    } else {
      std::cout << r.text << '\n';
      std::cerr << rep.dump() << '\n';
    }
  }
  return 0;
}

int cmd_gen(const Options& o) {
  InstanceGenerator gen(o.seed, o.bounds);
  Instance inst = gen.instance();
  ConjunctiveQuery q = gen.query();
  namespace fs = std::filesystem;
  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(o.out_dir + ": " + ec.message());
  write_file(dir / "tbox.txt", serialize(inst.tbox));
  write_file(dir / "policy.txt", serialize(inst.policy));
  write_file(dir / "abox.txt", serialize(inst.abox));
  write_file(dir / "query.txt", serialize(q));
  if (want_json(o, true)) {
    std::cout << json{{"seed", o.seed},
                      {"files", {"tbox.txt", "policy.txt", "abox.txt", "query.txt"}},
                      {"axioms", inst.tbox.axioms.size()},
                      {"denials", inst.policy.denials.size()},
                      {"assertions", inst.abox.size()}}
                     .dump()
              << '\n';
  }
  return 0;
}

std::size_t default_limit() {
  if (const char* env = std::getenv("CQE_LIMIT")) {
    try {
      std::size_t pos = 0;
      const unsigned long v = std::stoul(env, &pos);
      if (pos == std::string(env).size() && v >= 1) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid CQE_LIMIT='" << env << "'\n";
  }
  return kDefaultSizeGuard;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  o.limit = default_limit();

  CLI::App app{"Controlled query evaluation over DL-Lite_R ontologies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cqe 0.1.0");

  auto common = [&](CLI::App* sub, bool with_abox, bool with_query) {
    sub->add_option("--tbox", o.tbox, "TBox file")->check(CLI::ExistingFile);
    sub->add_option("--policy", o.policy, "policy file")->check(CLI::ExistingFile);
    if (with_abox) sub->add_option("--abox", o.abox, "ABox file")->check(CLI::ExistingFile);
    if (with_query) sub->add_option("--query", o.query, "query file")->check(CLI::ExistingFile);
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--limit", o.limit, "closure size guard for exponential procedures")
        ->check(CLI::PositiveNumber);
    sub->add_option("--jobs", o.jobs, "worker threads for query batches")->check(CLI::PositiveNumber);
    sub->add_flag("-v,--verbose", o.verbose, "log progress to stderr");
  };

  auto* consistency = app.add_subcommand("consistency", "check T+A and T+P+A consistency");
  common(consistency, true, false);
  auto* closure = app.add_subcommand("closure", "print the ground-atom closure of the ABox");
  common(closure, true, false);
  auto* censor = app.add_subcommand("censor", "compute optimal GA censors");
  common(censor, true, false);
  censor->add_option("--order", o.order, "iteration order")->check(CLI::IsMember({"lex"}));
  auto* order_file = censor->add_option("--order-file", o.order_file, "explicit atom order, one per line")
                         ->check(CLI::ExistingFile);
  censor->add_flag("--enumerate", o.enumerate, "print every optimal GA censor")->excludes(order_file);
  auto* entail = app.add_subcommand("entail", "decide entailment of Boolean CQs");
  common(entail, true, true);
  entail->add_option("--semantics", o.semantics, "certain, ib, qib, qib-fo or censor")
      ->check(CLI::IsMember({"certain", "ib", "qib", "qib-fo", "censor"}));
  auto* rewrite = app.add_subcommand("rewrite", "print the QIB-perfect FO reformulation");
  common(rewrite, false, true);
  auto* gen = app.add_subcommand("gen", "write a random instance");
  gen->add_option("--seed", o.seed, "random seed")->required();
  gen->add_option("--out", o.out_dir, "output directory");
  gen->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  gen->add_option("--concepts", o.bounds.concepts)->check(CLI::Range(1, 26));
  gen->add_option("--roles", o.bounds.roles)->check(CLI::Range(0, 60));
  gen->add_option("--constants", o.bounds.constants)->check(CLI::Range(1, 26));
  gen->add_option("--atoms", o.bounds.abox_atoms);
  gen->add_option("--axioms", o.bounds.axioms);
  gen->add_option("--denials", o.bounds.denials);
  gen->add_option("--denial-atoms", o.bounds.max_denial_atoms)->check(CLI::PositiveNumber);
  gen->add_option("--query-atoms", o.bounds.max_query_atoms)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*consistency) return cmd_consistency(o);
    if (*closure) return cmd_closure(o);
    if (*censor) return cmd_censor(o);
    if (*entail) return cmd_entail(o);
    if (*rewrite) return cmd_rewrite(o);
    if (*gen) return cmd_gen(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 2;
  } catch (const SizeGuardExceeded& e) {
    std::cerr << "size guard: " << e.what() << '\n';
    return 4;
  } catch (const InconsistentOntology& e) {
    std::cerr << "inconsistent: " << e.what() << '\n';
    return 3;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
