#include "doctest.h"
#include "flatpde/cli/commands.hpp"
#include "flatpde/sym/printer.hpp"
#include "helpers.hpp"

using namespace flatpde;
using namespace flatpde::cli;

namespace {

/// Position of the InputError thrown by parse(text).
std::pair<int, int> error_at(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

Report run_text(Command c, const std::string& text) { return run(c, parse(text)); }

}  // namespace

TEST_CASE("parse examples") {
  const InputDocument d = parse("n = 2\nsystem:\nF[1][1] = -2*dy[1]/(1+x[1])\n");
  REQUIRE(d.system);
  CHECK(d.system->size() == 1);
  CHECK(d.system->at({1, 1}) == testing::E(d.ctx, "-2*dy[1]/(1+x[1])"));
  // Every F[i][j], i <= j, must be set before the system is usable.
  CHECK_THROWS_AS(d.system_or_throw(), Error);

  const InputDocument t = parse("n = 2\ntransform:\nX[1]=x[1]\nX[2]=x[2]\nY=y*(1+x[1])\n");
  const PointTransformation pt = t.transform_or_throw();
  CHECK(pt.Y == t.ctx.y() * (1 + t.ctx.x(1)));
  CHECK(pt.X[1] == t.ctx.x(2));

  CHECK_THROWS_AS(parse("n = 1\nsystem:\n"), NRequiresAtLeastTwo);
}

TEST_CASE("parse accepts comments, whitespace and every block") {
  const InputDocument d = parse(
      "# header\n"
      "n = 2   # two variables\n"
      "cubic:\n"
      "  G[2][1] = y\n"
      "  H[1][2][1] = x[1]^2\n"
      "  L[1][2] = 1/3\n"
      "  M[2] = -x[2]\n"
      "theta:\n"
      "  THETA[3] = x[1]\n"
      "pi:\n"
      "  PI[3][3][1] = 7\n"
      "vectorfield:\n"
      "  XI[1] = x[1]*y\n");
  const CubicForm c = d.cubic_or_throw();
  CHECK(c.G(1, 2) == d.ctx.y());
  CHECK(c.H(1, 1, 2) == d.ctx.x(1) * d.ctx.x(1));
  CHECK(c.L(1, 2) == Expr(1) / 3);
  CHECK(c.M(2) == -d.ctx.x(2));
  CHECK(d.theta_or_throw().at(3) == d.ctx.x(1));
  CHECK(d.theta_or_throw().at(1).is_zero());
  CHECK(d.pi_or_throw().at(3, 1, 3) == Expr(7));
  const VectorField v = d.vectorfield_or_throw();
  CHECK(v.Xi[1].is_zero());
  CHECK(v.Eta.is_zero());
}

TEST_CASE("parse errors carry positions") {
  CHECK(error_at("n = 2\nsystem:\nF[1][1] = x[1] +\n") == std::make_pair(3, 17));
  CHECK(error_at("n = 2\nsystem:\nF[1][3] = 0\n").first == 3);
  CHECK(error_at("n = 2\nsystem:\nF[2][1] = 0\n").first == 3);
  CHECK(error_at("n = 2\nsystem:\nF[1][1] = 0\nF[1][1] = 1\n").first == 4);
  CHECK(error_at("n = 2\ntransform:\nY = dy[1]\n").first == 3);
  CHECK(error_at("n = 2\nsystem:\nF[1][1] = x[3]\n").first == 3);
  CHECK(error_at("n = 2\nsystem:\nF[1][1] = x[1]^-1\n").first == 3);
  CHECK(error_at("n = 2\nsystem:\nF[1][1] = 1/0\n").first == 3);
  CHECK(error_at("n = 2\nsurface:\n").first == 2);
  CHECK(error_at("n = 2\npi:\npi:\n").first == 3);
  CHECK(error_at("system:\n").first == 1);
  CHECK(error_at("n = 2\nsystem:\nF[1][1] = ddy[1][1]\n").first == 3);
  CHECK(error_at("n = 2\nsystem:\nF[1][1] = (x[1]\n").first == 3);
}

TEST_CASE("missing blocks") {
  const InputDocument d = parse("n = 2\n");
  CHECK_THROWS_AS(d.system_or_throw(), MissingBlock);
  CHECK_THROWS_AS(d.transform_or_throw(), MissingBlock);
  CHECK_THROWS_AS(run(Command::pi_check, d), MissingBlock);
  CHECK_THROWS_AS(run(Command::prolong, d), MissingBlock);
}

TEST_CASE("command names") {
  for (Command c : {Command::check, Command::synthesize, Command::prolong, Command::chern, Command::pi_check,
                    Command::selftest})
    CHECK(command_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(command_from_string("flatten"), std::invalid_argument);
}

TEST_CASE("check on the zero system") {
  const Report r = run_text(Command::check, "n = 2\nsystem:\nF[1][1]=0\nF[1][2]=0\nF[2][2]=0\n");
  CHECK(r.verdict == "flat");
  CHECK(r.exit_code == 0);
  for (const auto& f : r.residual_summary) CHECK(f.nonzero == 0);
  const std::string json = render_report(r, Format::json);
  CHECK(json.find("\"verdict\":\"flat\"") != std::string::npos);
  CHECK(json.back() == '\n');
  CHECK(json.find("timings") == std::string::npos);
}

TEST_CASE("check on F[1][1] = y") {
  const Report r = run_text(Command::check, "n = 2\nsystem:\nF[1][1]=y\nF[1][2]=0\nF[2][2]=0\n");
  CHECK(r.verdict == "cubic_but_not_integrable");
  CHECK(r.exit_code == 1);
  bool named = false;
  for (const auto& w : r.witnesses) named |= w.family == "II'" && w.index.size() == 4;
  CHECK(named);
  CHECK(render_report(r, Format::json).find("{\"family\":\"II'\",\"index\":[1,1,2,2],\"expression\":\"1\"}") !=
        std::string::npos);
}

TEST_CASE("synthesize on Y = y + x[1]^2") {
  const Report r = run_text(Command::synthesize, "n = 2\ntransform:\nX[1]=x[1]\nX[2]=x[2]\nY=y+x[1]^2\n");
  CHECK(r.verdict == "round-trip ok");
  CHECK(r.outputs.front() == std::make_pair(std::string("F[1][1]"), std::string("-2")));
  const std::string json = render_report(r, Format::json);
  CHECK(json.find("\"G[1][1]\":\"-2\"") != std::string::npos);
}

TEST_CASE("synthesize rejects a degenerate transformation") {
  CHECK_THROWS_AS(run_text(Command::synthesize, "n = 2\ntransform:\nX[1]=x[1]\nX[2]=x[1]\nY=y\n"),
                  DegenerateJacobian);
}

TEST_CASE("prolong, chern and pi-check") {
  const Report p = run_text(Command::prolong, "n = 2\nvectorfield:\nXI[1] = x[1]*y\n");
  CHECK(p.outputs.front() == std::make_pair(std::string("Y2[1][1]"), std::string("-2*dy[1]^2")));

  CHECK(run_text(Command::chern, "n = 2\nsystem:\nF[1][1]=dy[1]^4\nF[1][2]=0\nF[2][2]=0\n").verdict == "nonzero");
  CHECK(run_text(Command::chern, "n = 2\nsystem:\nF[1][1]=dy[1]^3\nF[1][2]=dy[1]^2*dy[2]\nF[2][2]=dy[1]*dy[2]^2\n").verdict == "zero");

  const Report bad = run_text(Command::pi_check, "n = 2\npi:\nPI[3][1][1] = x[2]\n");
  CHECK(bad.verdict == "nonzero_residuals");
  CHECK(bad.exit_code == 1);
  const Report good = run_text(Command::pi_check, "n = 2\ntransform:\nX[1]=x[1]+y^2\nX[2]=x[2]\nY=y*(1+x[1])\n");
  CHECK(good.verdict == "ok");
}

TEST_CASE("selftest") {
  RunOptions o;
  o.corpus_size = 4;
  const Report r = run(Command::selftest, std::nullopt, o);
  CHECK(r.verdict == "ok");
  const std::string text = render_report(r, Format::text);
  CHECK(text.find("square count n=2..6 ok\n") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("output is deterministic") {
  const std::string doc = "n = 3\ntransform:\nX[1]=x[1]+x[2]*y\nX[2]=x[2]\nX[3]=x[3]-x[1]^2\nY=y+x[3]*y\n";
  const std::string a = render_report(run_text(Command::synthesize, doc), Format::json);
  RunOptions serial;
  serial.execution = Execution::serial;
  const std::string b = render_report(run(Command::synthesize, parse(doc), serial), Format::json);
  CHECK(a == b);
}
