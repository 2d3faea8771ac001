#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "settings.hpp"

using yeelab::cli::IoError;
using yeelab::cli::KeyInfo;
using yeelab::cli::Settings;
using yeelab::cli::UsageError;

namespace {

Settings make() {
  return Settings({{"kind", "dielectric", "interface kind"},
                   {"eps", "3,4", "permittivities"},
                   {"simulate", "false", "run the simulator"}});
}

}  // namespace

TEST_SUITE("settings") {
  TEST_CASE("defaults, overrides and typed access") {
    Settings s = make();
    CHECK(s.get("kind") == "dielectric");
    CHECK(s.numbers("eps") == std::vector<double>{3, 4});
    CHECK_FALSE(s.flag("simulate"));
    s.apply("simulate=true");
    CHECK(s.flag("simulate"));
    s.apply("eps = 2.5");
    CHECK(s.number("eps") == 2.5);
  }

  TEST_CASE("unknown keys and malformed values are usage errors") {
    Settings s = make();
    CHECK_THROWS_AS(s.apply("nlambda=3"), UsageError);
    CHECK_THROWS_AS(s.apply("kind"), UsageError);
    s.apply("eps=abc");
    CHECK_THROWS_AS((void)s.number("eps"), UsageError);
    s.apply("simulate=maybe");
    CHECK_THROWS_AS((void)s.flag("simulate"), UsageError);
  }

  TEST_CASE("dump round-trips through a file") {
    Settings s = make();
    s.apply("eps=1,100");
    s.apply("kind=magnetic");
    const std::string path = "yeelab_settings_roundtrip.cfg";
    {
      std::ofstream out(path);
      out << s.dump();
    }
    Settings t = make();
    t.load_file(path);
    CHECK(t.dump() == s.dump());
    std::remove(path.c_str());
  }

  TEST_CASE("file errors name the line") {
    const std::string path = "yeelab_settings_bad.cfg";
    {
      std::ofstream out(path);
      out << "# comment\n\nkind = magnetic\nbogus = 1\n";
    }
    Settings s = make();
    try {
      s.load_file(path);
      FAIL("expected UsageError");
    } catch (const UsageError& e) {
      CHECK(std::string(e.what()).find(path + ":4") != std::string::npos);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(s.load_file("/nonexistent/yeelab.cfg"), IoError);
  }
}
