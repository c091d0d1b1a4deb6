#include "flatpde/cli/commands.hpp"

#include <chrono>
#include <stdexcept>

#include "flatpde/anchors.hpp"
#include "flatpde/corpus.hpp"
#include "flatpde/sym/printer.hpp"

namespace flatpde::cli {

namespace {

std::string bracket(const std::string& name, const Index& idx) {
  std::string s = name;
  for (int i : idx) s += "[" + std::to_string(i) + "]";
  return s;
}

class Builder {
 public:
  Builder(Command command, int n) {
    r_.command = to_string(command);
    r_.n = n;
  }

  std::string render(const Expr& e, const JetContext& ctx) const { return sym::render(e, ctx.universe()); }

  /// Adds a summary row and, if any entry is nonzero, a witness for the first.
  bool family(const std::string& name, const Residuals& res, const JetContext& ctx) {
    const std::size_t bad = count_nonzero(res);
    r_.residual_summary.push_back({name, res.size(), bad});
    if (auto hit = first_nonzero(res)) r_.witnesses.push_back({name, hit->first, render(hit->second, ctx)});
    return bad == 0;
  }

  void output(const std::string& name, const Expr& e, const JetContext& ctx) {
    r_.outputs.emplace_back(name, render(e, ctx));
  }

  /// Runs f and records its wall time under phase.
  template <class F>
  decltype(auto) timed(const std::string& phase, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    struct Stop {
      Builder* b;
      std::string phase;
      std::chrono::steady_clock::time_point start;
      ~Stop() {
        const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
        b->r_.timings.emplace_back(phase, ms.count());
      }
    } stop{this, phase, start};
    return f();
  }

  Report& report() { return r_; }

 private:
  Report r_;
};

const InputDocument& require(const std::optional<InputDocument>& doc) {
  if (!doc) throw std::invalid_argument("this command needs an input file");
  return *doc;
}

bool flatness_families(Builder& b, const CubicForm& c, Execution ex) {
  const JetContext& ctx = c.ctx();
  const FlatnessResiduals fr = b.timed("flatness", [&] { return flatness_residuals(c, ex); });
  bool ok = b.family("I'", fr.fam1, ctx);
  ok &= b.family("II'", fr.fam2, ctx);
  ok &= b.family("III'", fr.fam3, ctx);
  ok &= b.family("IV'", fr.fam4, ctx);
  const Residuals derived = b.timed("derived", [&] { return derived_flatness_residuals(c, ex); });
  ok &= b.family("derived", derived, ctx);
  return ok;
}

Report run_check(const InputDocument& doc, const RunOptions& o) {
  Builder b(Command::check, doc.n());
  const PdeSystem sys = doc.system_or_throw();
  const JetContext& ctx = sys.ctx();
  const auto integ = b.timed("integrability", [&] { return integrability_residuals(sys, o.execution); });
  b.family("integrability", integ.residuals, ctx);

  std::string verdict = "flat";
  std::optional<CubicForm> c;
  try {
    c = b.timed("cubic_extraction", [&] { return extract_cubic(sys); });
    b.report().residual_summary.push_back({"cubic_extraction", 1, 0});
  } catch (const NotCubicForm& e) {
    b.report().residual_summary.push_back({"cubic_extraction", 1, 1});
    b.report().witnesses.push_back({"cubic_extraction", {}, e.witness()});
    verdict = "not_cubic";
  }
  if (c && !flatness_families(b, *c, o.execution)) verdict = "cubic_but_not_integrable";
  const Residuals chern = b.timed("chern", [&] { return chern_tensor_identity(sys, o.execution); });
  b.family("chern", chern, ctx);

  b.report().verdict = verdict;
  b.report().exit_code = verdict == "flat" ? 0 : 1;
  return std::move(b.report());
}

void emit_cubic(Builder& b, const CubicForm& c) {
  const JetContext& ctx = c.ctx();
  const int n = c.n();
  auto put = [&](const std::string& name, const Index& idx, const Expr& e) {
    if (!e.is_zero()) b.output(bracket(name, idx), e, ctx);
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) put("G", {i, j}, c.G(i, j));
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) put("H", {k, i, j}, c.H(k, i, j));
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= n; ++j) put("L", {k, j}, c.L(k, j));
  for (int k = 1; k <= n; ++k) put("M", {k}, c.M(k));
}

Report run_synthesize(const InputDocument& doc, const RunOptions& o) {
  Builder b(Command::synthesize, doc.n());
  const PointTransformation t = doc.transform_or_throw();
  const JetContext& ctx = t.ctx;
  const Expr jac = b.timed("jacobian", [&] { return jacobian(t); });
  if (jac.is_zero()) throw DegenerateJacobian();
  const PdeSystem sys = b.timed("synthesize", [&] { return synthesize(t, o.execution); });
  const CubicForm from_squares = b.timed("ghlm", [&] { return ghlm_from_squares(t, o.execution); });

  for (int i = 1; i <= ctx.n(); ++i)
    for (int j = i; j <= ctx.n(); ++j) b.output(bracket("F", {i, j}), sys.F(i, j), ctx);
  emit_cubic(b, from_squares);
  b.output("jacobian", jac, ctx);

  const auto integ = b.timed("integrability", [&] { return integrability_residuals(sys, o.execution); });
  bool ok = b.family("integrability", integ.residuals, ctx);
  try {
    const CubicForm extracted = b.timed("cubic_extraction", [&] { return extract_cubic(sys); });
    const bool same = extracted == from_squares;
    b.report().residual_summary.push_back({"ghlm_match", 1, same ? 0u : 1u});
    if (!same) b.report().witnesses.push_back({"ghlm_match", {}, "extract_cubic differs from ghlm_from_squares"});
    ok &= same;
    ok &= flatness_families(b, extracted, o.execution);
  } catch (const NotCubicForm& e) {
    b.report().residual_summary.push_back({"ghlm_match", 1, 1});
    b.report().witnesses.push_back({"ghlm_match", {}, e.witness()});
    ok = false;
  }
  ok &= b.family("chern", b.timed("chern", [&] { return chern_tensor_identity(sys, o.execution); }), ctx);
  ok &= b.family("pullback", b.timed("pullback", [&] { return pullback_residual(t, sys, o.execution); }), ctx);

  b.report().verdict = ok ? "round-trip ok" : "round-trip failed";
  b.report().exit_code = ok ? 0 : 1;
  return std::move(b.report());
}

Report run_prolong(const InputDocument& doc, const RunOptions& o) {
  Builder b(Command::prolong, doc.n());
  const VectorField v = doc.vectorfield_or_throw();
  const Residuals y2 = b.timed("prolong", [&] { return prolong2(v, o.execution); });
  for (const auto& [idx, e] : y2)
    if (idx[0] <= idx[1]) b.output(bracket("Y2", idx), e, v.ctx);
  b.report().verdict = "ok";
  return std::move(b.report());
}

Report run_chern(const InputDocument& doc, const RunOptions& o) {
  Builder b(Command::chern, doc.n());
  const PdeSystem sys = doc.system_or_throw();
  const bool zero =
      b.family("chern", b.timed("chern", [&] { return chern_tensor_identity(sys, o.execution); }), sys.ctx());
  b.report().verdict = zero ? "zero" : "nonzero";
  b.report().exit_code = zero ? 0 : 1;
  return std::move(b.report());
}

Report run_pi_check(const InputDocument& doc, const RunOptions& o) {
  Builder b(Command::pi_check, doc.n());
  const JetContext& ctx = doc.ctx;
  std::optional<PiTable> table;
  std::optional<CubicForm> c;
  std::optional<ThetaFields> th;
  if (doc.pi) {
    table = doc.pi_or_throw();
  } else if (doc.transform) {
    const PointTransformation t = doc.transform_or_throw();
    if (jacobian(t).is_zero()) throw DegenerateJacobian();
    const SquareTable s = b.timed("squares", [&] { return squares(t, o.execution); });
    table = pi_from_squares(s);
    c = ghlm_from_table(ctx, s);
    th = ThetaFields::from_squares(s);
  } else {
    throw MissingBlock("pi");
  }

  bool ok = b.family("cross_diff", b.timed("cross_diff", [&] { return cross_diff_residuals(ctx, *table, o.execution); }),
                     ctx);
  const SplitFamilies sp = b.timed("split", [&] { return split_families(ctx, *table, o.execution); });
  const std::pair<const char*, const Residuals*> split_rows[] = {{"split1", &sp.f1}, {"split2", &sp.f2},
                                                                 {"split3", &sp.f3}, {"split4", &sp.f4},
                                                                 {"split5", &sp.f5}, {"split6", &sp.f6}};
  for (const auto& [name, res] : split_rows) ok &= b.family(name, *res, ctx);

  if (c && th) {
    const PiTable inverted = quasi_invert(*c, *th);
    Residuals round_trip;
    for (const auto& [key, e] : table->entries()) round_trip[key] = e - inverted.at(key[0], key[1], key[2]);
    ok &= b.family("quasi_inversion", round_trip, ctx);
    const SixFamilyResiduals six = b.timed("six", [&] { return six_family_residuals(*c, *th, o.execution); });
    const std::pair<const char*, const Residuals*> six_rows[] = {{"six1", &six.fam1}, {"six2", &six.fam2},
                                                                 {"six3", &six.fam3}, {"six4", &six.fam4},
                                                                 {"six5", &six.fam5}, {"six6", &six.fam6}};
    for (const auto& [name, res] : six_rows) ok &= b.family(name, *res, ctx);
    const ThetaSystemResiduals ts = b.timed("theta", [&] { return theta_system_residuals(*c, *th, o.execution); });
    ok &= b.family("theta_x", ts.x, ctx);
    ok &= b.family("theta_y", ts.y, ctx);
    ok &= b.family("theta_top_x", ts.top_x, ctx);
    ok &= b.family("theta_top_y", ts.top_y, ctx);
    const CompatResiduals cr = b.timed("compat", [&] { return compat_residuals(*c, o.execution); });
    ok &= b.family("compat1", cr.f1, ctx);
    ok &= b.family("compat1_derived", cr.f1_derived, ctx);
    ok &= b.family("compat2", cr.f2, ctx);
    ok &= b.family("compat3", cr.f3, ctx);
    ok &= b.family("compat4", cr.f4, ctx);
  }

  b.report().verdict = ok ? "ok" : "nonzero_residuals";
  b.report().exit_code = ok ? 0 : 1;
  return std::move(b.report());
}

/// a - b on the keys of a; a key missing from b counts as a mismatch.
bool agrees_on(const Residuals& a, const Residuals& b) {
  for (const auto& [key, e] : a) {
    auto it = b.find(key);
    if (it == b.end() || !(e - it->second).is_zero()) return false;
  }
  return true;
}

/// Accumulates one anchor over many instances: entries counts instances,
/// nonzero counts the failing ones.
struct Anchor {
  std::string name;
  std::size_t checked = 0, failed = 0;
  void add(bool ok) {
    ++checked;
    failed += !ok;
  }
};

Report run_selftest(const std::optional<InputDocument>& doc, const RunOptions& o) {
  Builder b(Command::selftest, doc ? doc->n() : 2);
  std::vector<Anchor> anchors;

  {
    const JetContext ctx(2);
    const auto corpus =
        b.timed("corpus", [&] { return transformation_corpus(ctx, o.corpus_size, o.seed, o.max_degree); });
    Anchor det{"determinantal identities n=2"}, pro{"prolongation n=2"}, syn{"synthesis n=2"};
    b.timed("anchors n=2", [&] {
      for (const auto& t : corpus) {
        const SquareTable s = squares(t, o.execution);
        const PdeSystem sys = synthesize_from_squares(ctx, s);
        det.add(all_zero(determinantal_anchor(t, sys)));
        const PdeSystem expanded = synthesize_expanded_n2(ctx, s);
        bool same = true;
        for (int i = 1; i <= 2; ++i)
          for (int j = 1; j <= 2; ++j) same &= (sys.F(i, j) - expanded.F(i, j)).is_zero();
        syn.add(same);
        const VectorField v{ctx, t.X, t.Y};
        pro.add(agrees_on(prolong2_expanded_n2(v), prolong2(v, o.execution)));
      }
    });
    anchors.push_back(det);
    anchors.push_back(pro);
    anchors.push_back(syn);
  }

  for (int n = 2; n <= 3; ++n) {
    const JetContext ctx(n);
    Anchor fam{"six-family first family = I' n=" + std::to_string(n)};
    b.timed("first family n=" + std::to_string(n), [&] {
      const ThetaFields th = ThetaFields::symbolic(ctx);
      for (const auto& c : cubic_corpus(ctx, o.corpus_size, o.seed))
        fam.add(agrees_on(six_family_residuals(c, th, o.execution).fam1, flatness_residuals(c, o.execution).fam1));
    });
    anchors.push_back(fam);
  }

  Anchor count{"square count n=2..6"};
  for (int n = 2; n <= 6; ++n) count.add(square_function_count(n) - ghlm_count(n) == n + 1);
  anchors.push_back(count);

  bool ok = true;
  for (const auto& a : anchors) {
    b.report().residual_summary.push_back({a.name, a.checked, a.failed});
    ok &= a.failed == 0;
  }
  b.report().verdict = ok ? "ok" : "failed";
  b.report().exit_code = ok ? 0 : 1;
  return std::move(b.report());
}

}  // namespace

Command command_from_string(const std::string& name) {
  if (name == "check") return Command::check;
  if (name == "synthesize") return Command::synthesize;
  if (name == "prolong") return Command::prolong;
  if (name == "chern") return Command::chern;
  if (name == "pi-check") return Command::pi_check;
  if (name == "selftest") return Command::selftest;
  throw std::invalid_argument("unknown command '" + name + "'");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::check: return "check";
    case Command::synthesize: return "synthesize";
    case Command::prolong: return "prolong";
    case Command::chern: return "chern";
    case Command::pi_check: return "pi-check";
    case Command::selftest: return "selftest";
  }
  return "";
}

Report run(Command command, const std::optional<InputDocument>& doc, const RunOptions& options) {
  switch (command) {
    case Command::check: return run_check(require(doc), options);
    case Command::synthesize: return run_synthesize(require(doc), options);
    case Command::prolong: return run_prolong(require(doc), options);
    case Command::chern: return run_chern(require(doc), options);
    case Command::pi_check: return run_pi_check(require(doc), options);
    case Command::selftest: return run_selftest(doc, options);
  }
  throw std::invalid_argument("unknown command");
}

}  // namespace flatpde::cli
