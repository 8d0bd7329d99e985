#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "photostat/curves.hpp"
#include "photostat/errors.hpp"
#include "photostat/io.hpp"

using namespace photostat;

TEST(Io, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 0.0}) {
    std::string s = io::format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(io::format_double(0.1), "0.1");
}

TEST(Io, ParamsRoundTrip) {
  for (auto p : {SourceParams{Coherent{2.0}}, SourceParams{Thermal{1.0, 0.01}}, SourceParams{Dpo{0.5, 10.0}},
                 SourceParams{Rf{1.0, 14.142135623730951}}}) {
    io::json j = {{"source", source_name(p)}, {"params", io::params_to_json(p)}};
    auto back = io::params_from_json(j);
    EXPECT_EQ(io::params_to_json(back), io::params_to_json(p));
  }
  EXPECT_THROW(io::params_from_json(io::json{{"source", "laser"}, {"params", io::json::object()}}), DataFormatError);
}

TEST(Io, CurveCsvRoundTrip) {
  DistRequest req;
  req.kind = DistKind::UnconditionalWait;
  req.n = 2;
  Curve c = sample_curve(Thermal{1.0, 2.0}, Detector(0.5), req, linear_grid(3.0, 7));
  std::string text = io::curve_csv(c);
  EXPECT_EQ(text.rfind("# meta: ", 0), 0u);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::istringstream is(text);
  Curve back = io::read_curve_csv(is, "c.csv");
  ASSERT_EQ(back.values.size(), c.values.size());
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    EXPECT_EQ(back.grid[i], c.grid[i]);
    EXPECT_EQ(back.values[i], c.values[i]);
  }
  EXPECT_EQ(back.meta.request.n, 2);
  EXPECT_EQ(back.meta.detector.eta(), 0.5);
  EXPECT_EQ(io::curve_csv(back), text);
}

TEST(Io, CurveCsvErrorsNameTheLine) {
  std::istringstream bad("# meta: {\"source\":\"coherent\",\"params\":{\"flux\":1}}\nT,value\n0,1\n0,2\n");
  try {
    io::read_curve_csv(bad, "x.csv");
    FAIL();
  } catch (const DataFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("x.csv:4"), std::string::npos) << e.what();
  }
  std::istringstream nometa("T,value\n0,1\n");
  EXPECT_THROW(io::read_curve_csv(nometa, "y.csv"), DataFormatError);
}

TEST(Io, EventsRoundTripAndErrors) {
  EventRecord r;
  r.times = {0.25, 1.0, 1.0000000000000002, 3.5};
  r.duration = 4.0;
  r.source = "coherent";
  r.seed = 9;
  std::istringstream is(io::events_text(r));
  auto back = io::read_events(is, "e.txt");
  EXPECT_EQ(back.times, r.times);
  EXPECT_EQ(back.duration, 4.0);
  EXPECT_EQ(back.seed, 9u);

  std::istringstream nodur("# measured\n0.5\n1.5\n2.25\n");
  auto ext = io::read_events(nodur, "ext.txt");
  EXPECT_EQ(ext.size(), 3u);
  EXPECT_EQ(ext.duration, 2.25);

  std::istringstream unordered("# measured\n0.5\n1.5\n1.25\n2.0\n");
  try {
    io::read_events(unordered, "ext.txt");
    FAIL();
  } catch (const DataFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("ext.txt:4"), std::string::npos) << e.what();
  }
  std::istringstream junk("0.5\nabc\n");
  EXPECT_THROW(io::read_events(junk, "j.txt"), DataFormatError);
  EXPECT_THROW(io::read_events_file("/nonexistent/file"), DataFormatError);
}

TEST(Io, AtomicWrite) {
  auto dir = std::filesystem::temp_directory_path() / "photostat_io_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "out.txt").string();
  io::atomic_write(path, "first\n");
  io::atomic_write(path, "second\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "second");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST(Curves, ClosedRegimesAndDispatch) {
  EXPECT_EQ(closed_regimes(SourceKind::Coherent), std::vector<std::string>{"exact-n"});
  DistRequest req;
  req.engine = EngineKind::ClosedForm;
  req.regime = "equal";
  req.n = 2;
  EXPECT_THROW(closed_value(Rf{1.0, 2.0}, Detector(1.0), req, 1.0), ConfigError);
  EXPECT_NEAR(closed_value(Rf{1.0, 1.0}, Detector(1.0), req, 5.0),
              std::exp(5 * std::log(5.0) - 5.0 - std::lgamma(6.0)), 1e-13);
  req.regime = "bogus";
  EXPECT_THROW(closed_value(Rf{1.0, 1.0}, Detector(1.0), req, 1.0), ConfigError);
  EXPECT_THROW(linear_grid(0.0, 10), ConfigError);
}

TEST(Curves, MonteCarloCurveIsDeterministic) {
  DistRequest req;
  req.engine = EngineKind::MonteCarlo;
  McOptions mc;
  mc.events = 2e4;
  mc.seed = 4;
  auto a = sample_curve(Coherent{1.0}, Detector(0.5), req, linear_grid(5.0, 21), mc);
  auto b = sample_curve(Coherent{1.0}, Detector(0.5), req, linear_grid(5.0, 21), mc);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.values.size(), 20u);
  EXPECT_TRUE(a.has_errors());
}
