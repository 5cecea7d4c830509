#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

CliRun fibdiff(const std::string& args) {
  CliRun r;
  std::string cmd = std::string(FIBDIFF_EXE) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Drops timing fields recursively.
void strip_timing(nlohmann::json& j) {
  if (j.is_object()) {
    for (const char* k : {"elapsed_ms", "elapsed", "timing", "total_ms"}) j.erase(k);
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

}  // namespace

TEST(Cli, ProveExitCodes) {
  CliRun ok = fibdiff("prove " + quote("F[2k] = L[k]*F[k]"));
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("proved"), std::string::npos);
  CliRun bad = fibdiff("prove " + quote("F[2k] = L[k]*F[k] + 1"));
  EXPECT_EQ(bad.code, 1) << bad.out;
  EXPECT_NE(bad.out.find("refuted"), std::string::npos);
}

TEST(Cli, ParseErrorExitCode) {
  CliRun r = fibdiff("prove " + quote("F[2k = L"));
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("position"), std::string::npos);
  EXPECT_EQ(fibdiff("parse " + quote("F[k] == F[k]")).code, 2);
}

TEST(Cli, PreconditionExitCode) {
  EXPECT_EQ(fibdiff("derive --wrt k --component real --q -2 " + quote("U[2k] = U[k]*V[k]")).code, 3);
  EXPECT_EQ(fibdiff("derive --wrt k --component imag --p 3 --q 1 " + quote("U[2k] = U[k]*V[k]")).code, 3);
  EXPECT_EQ(fibdiff("derive --wrt m " + quote("F[2k] = L[k]*F[k]")).code, 3);
}

TEST(Cli, EmptyTagFilter) {
  CliRun r = fibdiff("corpus --tag no-such-tag");
  EXPECT_EQ(r.code, 4) << r.out;
}

TEST(Cli, DeriveExamples) {
  CliRun real = fibdiff("derive --wrt k --component real " + quote("F[2k] = L[k]*F[k]"));
  EXPECT_EQ(real.code, 0) << real.out;
  EXPECT_NE(real.out.find("2*L[2k] = L[k]^2 + 5*F[k]^2"), std::string::npos) << real.out;
  CliRun imag = fibdiff("derive --wrt k --component imag " + quote("F[2k] = L[k]*F[k]"));
  EXPECT_NE(imag.out.find("2*beta^k = L[k] - sqrtD*F[k]"), std::string::npos) << imag.out;
  CliRun comb = fibdiff("derive --wrt k --component imag --shift s --combine G " + quote("F[k+1]^2 + F[k]^2 = F[2k+1]"));
  EXPECT_EQ(comb.code, 0) << comb.out;
  EXPECT_NE(comb.out.find("F[k+1]*G[s+1] + F[k]*G[s] = G[k+s+1]"), std::string::npos) << comb.out;
}

TEST(Cli, TraceReplay) {
  CliRun trace = fibdiff("derive --format json --wrt k --component imag --shift s --combine G " +
                      quote("F[k+1]^2 + F[k]^2 = F[2k+1]"));
  ASSERT_EQ(trace.code, 0) << trace.out;
  auto j = nlohmann::json::parse(trace.out);
  EXPECT_EQ(j.at("kind"), "derive-trace");
  EXPECT_GE(j.at("steps").size(), 4u);
  std::string path = ::testing::TempDir() + "fibdiff_trace.json";
  std::ofstream(path) << trace.out;
  CliRun replay = fibdiff("derive --replay " + quote(path));
  EXPECT_EQ(replay.code, 0) << replay.out;
  EXPECT_NE(replay.out.find("matches"), std::string::npos) << replay.out;
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(fibdiff("verify --grid n=0..6 " + quote("sum(j,0,n, F[j]) = F[n+2] - 1")).code, 0);
  CliRun bad = fibdiff("verify --grid n=0..6 " + quote("sum(j,0,n, F[j]) = F[n+2]"));
  EXPECT_EQ(bad.code, 1) << bad.out;
  EXPECT_EQ(fibdiff("verify --numeric --grid k=0..5 " +
                    quote("arctan(1/F[2k+1]) = arctan(1/F[2k]) - arctan(1/F[2k+2])"))
                .code,
            0);
}

TEST(Cli, CorpusJsonDeterministic) {
  CliRun a = fibdiff("corpus --tag horadam --format json");
  CliRun b = fibdiff("corpus --tag horadam --format json --threads 1");
  ASSERT_EQ(a.code, 0) << a.out;
  ASSERT_EQ(b.code, 0) << b.out;
  auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
  strip_timing(ja);
  strip_timing(jb);
  EXPECT_EQ(ja, jb);
  CliRun c = fibdiff("corpus --tag horadam --format json --no-timing");
  CliRun d = fibdiff("corpus --tag horadam --format json --no-timing");
  EXPECT_EQ(c.out, d.out);
}
