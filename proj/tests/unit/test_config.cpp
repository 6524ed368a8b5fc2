#include <gtest/gtest.h>

#include <json.hpp>
#include <random>
#include <thread>

#include "handmenu/config.hpp"
#include "handmenu/error.hpp"

namespace handmenu {
namespace {

using nlohmann::json;

TEST(PipelineConfig, DefaultsAreValidAndRoundTrip) {
  const PipelineConfig c;
  EXPECT_NO_THROW(c.validate());
  const json j = c.to_json();
  EXPECT_EQ(j["menu"], "default");
  EXPECT_EQ(PipelineConfig::from_json(j).to_json(), j);
  EXPECT_EQ(PipelineConfig::parse("{}").to_json(), j);
}

TEST(PipelineConfig, CustomMenuRoundTrips) {
  const auto c = PipelineConfig::parse(
      R"({"menu":[{"id":"a","action":"mute","rect":[0,0,0.5,0.5]},{"id":"b","action":"next","rect":[0.5,0,1,0.5],"caption":"Next"}]})");
  ASSERT_EQ(c.menu.regions().size(), 2u);
  EXPECT_EQ(c.menu.regions()[0].caption, "a");
  EXPECT_FALSE(c.menu_is_default);
  EXPECT_EQ(PipelineConfig::from_json(c.to_json()).menu, c.menu);
}

TEST(PipelineConfig, RejectionsNameTheField) {
  const std::pair<const char*, const char*> cases[] = {
      {R"({"dwell_ms":-5})", "dwell_ms"},
      {R"({"dwell_ms":1.5})", "dwell_ms"},
      {R"({"min_area":0})", "min_area"},
      {R"({"alpha":0})", "alpha"},
      {R"({"blur_radius":33})", "blur_radius"},
      {R"({"connectivity":6})", "connectivity"},
      {R"({"hsv_range":{"h_lo":360}})", "hsv_range"},
      {R"({"hsv_range":{"s_lo":0.9,"s_hi":0.1}})", "hsv_range"},
      {R"({"hsv_range":{"hue":3}})", "hsv_range.hue"},
      {R"({"hysteresis_margin":0.3})", "hysteresis_margin"},
      {R"({"listen_address":"nowhere"})", "listen_address"},
      {R"({"menu":"fancy"})", "menu"},
      {R"({"menu":[{"id":"a","action":"mute","rect":[0,0,0.6,0.6]},{"id":"b","action":"stop","rect":[0.5,0.5,1,1]}]})", "menu"},
      {R"({"dwel_ms":800})", "dwel_ms"},
      {"[1,2]", "config"},
      {"{", "config"},
  };
  for (const auto& [text, field] : cases) {
    try {
      PipelineConfig::parse(text);
      ADD_FAILURE() << "accepted " << text;
    } catch (const ConfigError& e) {
      EXPECT_EQ(std::string(e.what()).rfind(field, 0), 0u) << text << " -> " << e.what();
    }
  }
}

TEST(PipelineConfig, AcceptsBoundaryValues) {
  EXPECT_NO_THROW(PipelineConfig::parse(
      R"({"blur_radius":0,"min_area":1,"alpha":1,"dwell_ms":1,"cooldown_ms":0,"hysteresis_margin":0,
          "hsv_range":{"h_lo":350,"h_hi":10},"listen_address":":0","fps_cap":0,"connectivity":4})"));
}

TEST(ListenAddress, Parsing) {
  EXPECT_EQ(parse_listen_address("127.0.0.1:8765").port, 8765);
  EXPECT_EQ(parse_listen_address(":80").host, "0.0.0.0");
  EXPECT_THROW(parse_listen_address("host"), ConfigError);
  EXPECT_THROW(parse_listen_address("host:99999"), ConfigError);
  EXPECT_THROW(parse_listen_address("host:12ab"), ConfigError);
}

TEST(LiveUpdate, OnlyTunablesAndPartialHsvMerge) {
  const PipelineConfig base;
  const auto c = base.with_live_update(json{{"hsv_range", {{"h_lo", 100.0}}}, {"dwell_ms", 1200}});
  EXPECT_EQ(c.dwell_ms, 1200);
  EXPECT_EQ(c.hsv_range.h_lo, 100.0);
  EXPECT_EQ(c.hsv_range.h_hi, base.hsv_range.h_hi);
  EXPECT_THROW(base.with_live_update(json{{"cooldown_ms", 10}}), ConfigError);
  EXPECT_THROW(base.with_live_update(json{{"bogus", 10}}), ConfigError);
  EXPECT_THROW(base.with_live_update(json::object()), ConfigError);
  EXPECT_THROW(base.with_live_update(json{{"min_area", -1}}), ConfigError);
}

TEST(ConfigChannel, RejectedUpdateLeavesConfigUntouched) {
  ConfigChannel ch{PipelineConfig{}};
  EXPECT_TRUE(ch.request_update(json{{"dwell_ms", -5}}).has_value());
  EXPECT_FALSE(ch.take_pending().has_value());
  EXPECT_EQ(ch.latest().dwell_ms, 800);

  EXPECT_FALSE(ch.request_update(json{{"dwell_ms", 1000}}).has_value());
  EXPECT_FALSE(ch.request_update(json{{"min_area", 50}}).has_value());
  const auto pending = ch.take_pending();
  ASSERT_TRUE(pending.has_value());
  EXPECT_EQ(pending->dwell_ms, 1000);
  EXPECT_EQ(pending->min_area, 50);
  EXPECT_FALSE(ch.take_pending().has_value());
}

// --- schema-aware fuzz -----------------------------------------------------

struct Candidate {
  json value;
  bool valid;
};

// Independent statement of each field's domain, used to label fuzz cases.
class ConfigFuzzer {
 public:
  explicit ConfigFuzzer(std::uint64_t seed) : rng_(seed) {}

  std::pair<json, bool> next() {
    json doc = json::object();
    bool valid = true;
    HsvState hsv;
    for (const char* key : kKeys) {
      if (!coin(0.4)) continue;
      Candidate c = field(key, hsv);
      doc[key] = c.value;
      valid = valid && c.valid;
    }
    if (doc.contains("hsv_range")) valid = valid && hsv.ordered();
    if (coin(0.05)) {
      doc["extra_" + std::to_string(rng_() % 10)] = 1;
      valid = false;
    }
    return {doc, valid};
  }

 private:
  static constexpr const char* kKeys[] = {"blur_radius",   "hsv_range",       "min_area",          "connectivity",
                                          "alpha",         "dwell_ms",        "cooldown_ms",       "hysteresis_margin",
                                          "lost_timeout_ms", "menu",          "player_socket_path", "listen_address",
                                          "fps_cap"};

  struct HsvState {
    double s_lo = 0.4, s_hi = 1.0, v_lo = 0.25, v_hi = 1.0;
    bool ordered() const { return s_lo <= s_hi && v_lo <= v_hi; }
  };

  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  json junk() {
    switch (rng_() % 5) {
      case 0:
        return "text";
      case 1:
        return nullptr;
      case 2:
        return json::array({1, 2});
      case 3:
        return true;
      default:
        return json::object();
    }
  }

  Candidate int_field(std::int64_t lo, std::int64_t hi) {
    switch (rng_() % 6) {
      case 0:
        return {junk(), false};
      case 1:
        return {static_cast<double>(lo) + 0.5, false};
      case 2:
        return {json(static_cast<std::uint64_t>(INT64_MAX) + 5u), false};
      default: {
        const std::int64_t span = hi - lo;
        const std::int64_t v = integer(lo - span / 4 - 2, hi + span / 4 + 2);
        return {v, v >= lo && v <= hi};
      }
    }
  }

  Candidate real_field(double lo, double hi, bool lo_open) {
    if (coin(0.1)) return {junk(), false};
    if (coin(0.1)) return {lo_open ? lo : hi, !lo_open};
    const double span = hi - lo;
    const double v = uniform(lo - span / 4, hi + span / 4);
    const bool ok = (lo_open ? v > lo : v >= lo) && v <= hi;
    return {v, ok};
  }

  Candidate hsv(HsvState& st) {
    if (coin(0.05)) return {junk(), false};
    json obj = json::object();
    bool ok = true;
    const char* names[] = {"h_lo", "h_hi", "s_lo", "s_hi", "v_lo", "v_hi"};
    for (const char* n : names) {
      if (!coin(0.5)) continue;
      if (coin(0.03)) {
        obj[n] = "x";
        ok = false;
        continue;
      }
      const bool hue = n[0] == 'h';
      const double v = hue ? uniform(-20, 380) : uniform(-0.2, 1.2);
      obj[n] = v;
      ok = ok && (hue ? (v >= 0 && v < 360) : (v >= 0 && v <= 1));
      if (std::string(n) == "s_lo") st.s_lo = v;
      if (std::string(n) == "s_hi") st.s_hi = v;
      if (std::string(n) == "v_lo") st.v_lo = v;
      if (std::string(n) == "v_hi") st.v_hi = v;
    }
    if (coin(0.03)) {
      obj["hue"] = 1;
      ok = false;
    }
    return {obj, ok};
  }

  Candidate menu() {
    static const std::vector<Candidate> options = {
        {"default", true},
        {"other", false},
        {json::array(), true},
        {json::parse(R"([{"id":"a","action":"mute","rect":[0,0,0.5,0.5]}])"), true},
        {json::parse(R"([{"id":"a","action":"mute","rect":[0,0,0.5,0.5]},{"id":"b","action":"stop","rect":[0.5,0,1,0.5]}])"), true},
        {json::parse(R"([{"id":"a","action":"mute","rect":[0,0,0.5,0.5]},{"id":"a","action":"stop","rect":[0.5,0,1,0.5]}])"), false},
        {json::parse(R"([{"id":"a","action":"mute","rect":[0,0,0.6,0.5]},{"id":"b","action":"stop","rect":[0.5,0,1,0.5]}])"), false},
        {json::parse(R"([{"id":"a","action":"jump","rect":[0,0,0.5,0.5]}])"), false},
        {json::parse(R"([{"id":"a","action":"mute","rect":[0,0,0.5]}])"), false},
        {json::parse(R"([{"id":"a","action":"mute","rect":[0.5,0,0.5,0.5]}])"), false},
        {json::parse(R"([{"id":"a","action":"mute","rect":[0,0,1.5,0.5]}])"), false},
        {json::parse(R"([{"id":"a","action":"mute","rect":[0,0,0.5,0.5],"color":1}])"), false},
        {json::parse(R"([{"action":"mute","rect":[0,0,0.5,0.5]}])"), false},
        {json::parse(R"([{"id":"","action":"mute","rect":[0,0,0.5,0.5]}])"), false},
        {json::parse(R"([3])"), false},
        {17, false},
    };
    return options[rng_() % options.size()];
  }

  Candidate address() {
    static const std::vector<Candidate> options = {
        {"127.0.0.1:8765", true}, {":0", true},         {"", true},          {"0.0.0.0:65535", true},
        {"localhost", false},     {"host:65536", false}, {"host:-1", false}, {"host:abc", false},
        {"host:", false},         {5, false},
    };
    return options[rng_() % options.size()];
  }

  Candidate socket_path() {
    if (coin(0.1)) return {junk(), false};
    const std::size_t n = static_cast<std::size_t>(integer(0, 130));
    return {std::string(n, 's'), n < 108};
  }

  Candidate field(const std::string& key, HsvState& st) {
    if (key == "blur_radius") return int_field(0, 32);
    if (key == "hsv_range") return hsv(st);
    if (key == "min_area") return int_field(1, 100'000'000);
    if (key == "connectivity") {
      const std::int64_t v = integer(0, 10);
      return coin(0.1) ? Candidate{junk(), false} : Candidate{v, v == 4 || v == 8};
    }
    if (key == "alpha") return real_field(0.0, 1.0, true);
    if (key == "dwell_ms") return int_field(1, 600'000);
    if (key == "cooldown_ms" || key == "lost_timeout_ms") return int_field(0, 600'000);
    if (key == "hysteresis_margin") return real_field(0.0, 0.25, false);
    if (key == "menu") return menu();
    if (key == "player_socket_path") return socket_path();
    if (key == "listen_address") return address();
    return real_field(0.0, 1000.0, false);  // fps_cap
  }

  std::mt19937_64 rng_;
};

TEST(PipelineConfig, SchemaAwareFuzz) {
  ConfigFuzzer fuzz(20240611);
  int accepted = 0, rejected = 0;
  for (int i = 0; i < 10'000; ++i) {
    const auto [doc, valid] = fuzz.next();
    try {
      const PipelineConfig c = PipelineConfig::from_json(doc);
      ASSERT_TRUE(valid) << "accepted invalid: " << doc.dump();
      ASSERT_EQ(PipelineConfig::from_json(c.to_json()).to_json(), c.to_json());
      ++accepted;
    } catch (const ConfigError& e) {
      ASSERT_FALSE(valid) << "rejected valid: " << doc.dump() << " (" << e.what() << ")";
      ASSERT_GT(std::string(e.what()).size(), 0u);
      ++rejected;
    }
  }
  EXPECT_GT(accepted, 200);
  EXPECT_GT(rejected, 500);
}

TEST(PipelineConfig, RandomBytesNeverCrash) {
  std::mt19937_64 rng(1);
  const std::string alphabet = "{}[]\":,0123456789.-eEtruefalsn abcdhlo_";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const std::size_t n = rng() % 60;
    for (std::size_t k = 0; k < n; ++k) s += alphabet[rng() % alphabet.size()];
    try {
      PipelineConfig::parse(s);
    } catch (const ConfigError&) {
    }
  }
}

}  // namespace
}  // namespace handmenu
