#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include <cartgenus/cartgenus.hpp>
#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("NO_COLOR=1 ") + CARTGENUS_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json result_of(const Run& r) { return json::parse(r.out).at("result"); }

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("no-such-command").code, 2);
  EXPECT_EQ(cli("girth 'not a graph!'").code, 2);
  EXPECT_EQ(cli("toroidal product:K4,P3").code, 2);  // no budget given
  EXPECT_EQ(cli("genus K4 --budget forever").code, 2);
  EXPECT_EQ(cli("construct wheel").code, 2);
  EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, ToroidalRefutesK4P3) {
  auto r = cli("toroidal product:K4,P3 --budget 1h");
  EXPECT_EQ(r.code, 1);
  auto j = result_of(r);
  EXPECT_EQ(j["verdict"], "refuted");
  EXPECT_GT(j["nodes"].get<long>(), 0);
}

TEST(Cli, ToroidalFindsCertificate) {
  auto r = cli("toroidal K7 --budget 10m");
  EXPECT_EQ(r.code, 0);
  auto cert = cartgenus::certificate_from_json(result_of(r)["certificate"]);
  EXPECT_TRUE(cartgenus::verify_certificate(cert));
  EXPECT_EQ(cert.genus, 1);
}

TEST(Cli, BudgetExhaustionAndResume) {
  const std::string file = ::testing::TempDir() + "cartgenus_frontier.json";
  auto r = cli("toroidal product:refh,P2 --nodes 50 --save-frontier " + file);
  ASSERT_EQ(r.code, 3);
  EXPECT_EQ(result_of(r)["verdict"], "budget_exhausted");
  auto done = cli("toroidal product:refh,P2 --budget 10m --resume " + file);
  EXPECT_EQ(done.code, 1);
  EXPECT_EQ(result_of(done)["verdict"], "refuted");
  EXPECT_EQ(cli("toroidal K5 --budget 1m --resume " + file).code, 2);
}

TEST(Cli, OcWheel) {
  auto r = cli("oc wheel:5");
  EXPECT_EQ(r.code, 0);
  auto cert = cartgenus::oc_certificate_from_json(result_of(r)["certificate"]);
  EXPECT_TRUE(cartgenus::verify_certificate(cert));
  EXPECT_EQ(cli("oc hn:5").code, 1);
}

TEST(Cli, FacesetsK4P3) {
  auto r = cli("facesets product:K4,P3 --genus 1");
  ASSERT_EQ(r.code, 0);
  std::set<std::string> got;
  const json j = result_of(r);
  for (const auto& d : j["distributions"]) got.insert(d["text"].get<std::string>());
  EXPECT_EQ(got, (std::set<std::string>{"f3=4 f4=10", "f3=5 f4=8 f5=1", "f3=6 f4=6 f5=2", "f3=6 f4=7 f6=1"}));
  auto a = result_of(cli("facesets product:K4,P3 --genus 1 --analyze"));
  for (const auto& d : a["distributions"]) EXPECT_EQ(d["feasibility"]["verdict"], "infeasible");
}

TEST(Cli, SmallQueries) {
  EXPECT_EQ(result_of(cli("girth C~"))["girth"], 3);
  EXPECT_EQ(result_of(cli("girth P4"))["girth"], "acyclic");
  EXPECT_EQ(result_of(cli("connectivity K3_3"))["connectivity"], 3);
  EXPECT_EQ(cli("planar K5").code, 1);
  EXPECT_EQ(cli("planar W6").code, 0);
  EXPECT_EQ(cli("minor K4 hn:6").code, 0);
  EXPECT_EQ(cli("minor K5 W7").code, 1);
  EXPECT_EQ(result_of(cli("two-factors refh"))["count"], 8);
  EXPECT_EQ(result_of(cli("cycle-types product:K4,P3 --length 6"))["types"], 4);
  auto p = result_of(cli("product K4 P2"));
  EXPECT_EQ(cartgenus::parse_graph6(p["graph6"].get<std::string>()).size(), 16);
  auto g = result_of(cli("genus K3_3 --budget 1m"));
  EXPECT_EQ(g["genus"], 1);
}

TEST(Cli, GraphFiles) {
  const std::string path = ::testing::TempDir() + "cartgenus_k5.g6";
  std::ofstream(path) << ">>graph6<<D~{\n";
  EXPECT_EQ(cli("planar " + path).code, 1);
  const std::string jpath = ::testing::TempDir() + "cartgenus_w4.json";
  std::ofstream(jpath) << cartgenus::graph_to_json(cartgenus::wheel(4)).dump();
  EXPECT_EQ(cli("oc @" + jpath).code, 0);
}

TEST(Cli, Constructions) {
  auto k = result_of(cli("construct k4p3"));
  EXPECT_EQ(k["genus"], 2);
  EXPECT_EQ(k["faces"], 12);
  auto h = result_of(cli("construct hp2"));
  EXPECT_EQ(h["faces"], 16);
  auto w = result_of(cli("construct hn 6"));
  EXPECT_EQ(cartgenus::parse_graph6(w["graph6"].get<std::string>()).order(), 9);
}

TEST(Cli, Classify) {
  EXPECT_EQ(cli("classify W5 P2 --budget 1m").code, 0);
  auto k = cli("classify K4 P3 --budget 1m");
  EXPECT_EQ(k.code, 1);
  EXPECT_EQ(result_of(k)["reason"], "three_connected_and_H_ne_P2");
  EXPECT_EQ(result_of(cli("classify K6 P2 --budget 1m"))["reason"], "connectivity_ge_5");
}

TEST(Cli, PrettyOutput) {
  auto r = cli("facesets product:K4,P3 --genus 1 --pretty");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("| f3=4 f4=10 |"), std::string::npos);
  EXPECT_EQ(r.out.find('\033'), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  auto a = json::parse(cli("toroidal product:C4,P2 --nodes 100000").out);
  auto b = json::parse(cli("toroidal product:C4,P2 --nodes 100000").out);
  EXPECT_EQ(a["result"]["certificate"], b["result"]["certificate"]);
}
