#include <gtest/gtest.h>

#include "dtnreward/error.hpp"
#include "dtnreward/model.hpp"
#include "dtnreward/scenarios.hpp"

using namespace dtnreward;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::ParseError;
}

RelaySet two() {
  return validate_profiles({RelayProfile::exponential("a", 1.0, 2.0), RelayProfile::exponential("b", 0.5, 0.25)});
}

}  // namespace

TEST(RelaySet, ValidProfiles) {
  const RelaySet r = two();
  EXPECT_EQ(r.size(), 2u);
  EXPECT_EQ(r.index_of("b"), 1u);
  EXPECT_FALSE(r.find("c"));
  EXPECT_DOUBLE_EQ(r.lambda(0), 1.0);
  EXPECT_DOUBLE_EQ(r.mu(1), 0.25);
  EXPECT_TRUE(r.all_exponential());
  EXPECT_EQ(code_of([&] { (void)r.index_of("zz"); }), Errc::UnknownRelay);
}

TEST(RelaySet, Rejections) {
  EXPECT_EQ(code_of([] {
              validate_profiles({RelayProfile::exponential("a", 1, 1), RelayProfile::exponential("a", 2, 2)});
            }),
            Errc::DuplicateId);
  EXPECT_EQ(code_of([] { validate_profiles({RelayProfile::exponential("a", 0.0, 1.0)}); }), Errc::NonPositiveRate);
  EXPECT_EQ(code_of([] { validate_profiles({RelayProfile::exponential("a", 1.0, -1.0)}); }), Errc::NonPositiveRate);
  EXPECT_EQ(code_of([] {
              validate_profiles({RelayProfile{"a", 1.0, 1.0, Exponential{2.0}, Exponential{1.0}}});
            }),
            Errc::InconsistentRate);
}

TEST(RelaySet, FromDistributionsTakesRatesFromMeans) {
  const auto p = RelayProfile::from_distributions("w", Weibull{1.0, 4.0}, Hyperexponential{{0.5, 0.5}, {1.0, 3.0}});
  EXPECT_NEAR(p.lambda, 0.25, 1e-12);
  EXPECT_NEAR(p.mu, 1.0 / (0.5 + 0.5 / 3.0), 1e-12);
  EXPECT_FALSE(p.is_exponential());
  EXPECT_NO_THROW(validate_profiles({p}));
}

TEST(Costs, BaseCost) {
  const CostParams c = CostParams::make(0.4, 0.04, 0.01);
  EXPECT_DOUBLE_EQ(c.c_d, 0.4);
  EXPECT_DOUBLE_EQ(c.c_r, 0.04);
  EXPECT_DOUBLE_EQ(c.c_s, 0.01);
  const auto r1 = RelayProfile::exponential("r1", 0.6530, 0.7945);
  EXPECT_NEAR(base_cost(c, r1).value, 0.04 + 0.01 / 0.7945, 1e-15);
  EXPECT_NEAR(quoted_base_cost(c, r1).value, base_cost(c, r1).value, 1e-15);
  // Bursty destination law: the true residual is longer than the quoted one.
  const auto h = RelayProfile::from_distributions("h", Exponential{1.0}, Hyperexponential{{0.5, 0.5}, {1.0, 3.0}});
  EXPECT_GT(base_cost(c, h).value, quoted_base_cost(c, h).value);
  EXPECT_EQ(code_of([] { CostParams::make(-1.0, 0.0, 0.0); }), Errc::DomainError);
}

TEST(InfoSetting, RoundTrip) {
  for (InfoSetting s : kAllSettings) EXPECT_EQ(parse_info_setting(to_string(s)), s);
  EXPECT_EQ(parse_info_setting("P+"), InfoSetting::PartialWithIdentities);
  EXPECT_EQ(parse_info_setting("P-"), InfoSetting::PartialWithoutIdentities);
  EXPECT_EQ(parse_info_setting("N"), InfoSetting::NoInformation);
  EXPECT_EQ(code_of([] { parse_info_setting("bogus"); }), Errc::ParseError);
}

TEST(EncounterLog, Validation) {
  const RelaySet r = two();
  EXPECT_EQ(code_of([&] { EncounterLog(r, {1.0}, std::vector<std::size_t>{0, 1}); }), Errc::InvalidLog);
  EXPECT_EQ(code_of([&] { EncounterLog(r, {2.0, 1.0}, std::vector<std::size_t>{0, 1}); }), Errc::InvalidLog);
  EXPECT_EQ(code_of([&] { EncounterLog(r, {1.0, 2.0}, std::vector<std::size_t>{0, 0}); }), Errc::InvalidLog);
  EXPECT_EQ(code_of([&] { EncounterLog(r, {-1.0}, std::vector<std::size_t>{0}); }), Errc::InvalidLog);
  const std::vector<std::string> bad{"x"};
  EXPECT_EQ(code_of([&] { EncounterLog(r, {1.0}, bad); }), Errc::UnknownRelay);
}

TEST(EncounterLog, TiesAreBrokenByListOrder) {
  const RelaySet r = two();
  const std::vector<std::string> ids{"b", "a"};
  const EncounterLog log(r, {1.0, 1.0}, ids);
  EXPECT_EQ(log.relay(0), 1u);
  EXPECT_GT(log.time(1), log.time(0));
  EXPECT_NEAR(log.time(1), 1.0, 1e-15);
  EXPECT_EQ(log.position_of(0), 1u);
  EXPECT_EQ(log.prefix(1).size(), 1u);
  EXPECT_EQ(code_of([&] { (void)log.prefix(3); }), Errc::IndexOutOfRange);
}

TEST(Knowledge, ExposesOnlyWhatTheSettingReveals) {
  const RelaySet r = scenarios::heterogeneous_exponential();
  const EncounterLog log(r, {0.1, 0.2, 0.3}, std::vector<std::size_t>{4, 2, 7});
  const auto f = Knowledge::from_log(InfoSetting::Full, log, 3);
  EXPECT_EQ(f.relay, 7u);
  EXPECT_EQ(f.order, 3u);
  EXPECT_EQ(f.prior_relays, (std::vector<std::size_t>{4, 2}));
  EXPECT_EQ(f.prior_times, (std::vector<double>{0.1, 0.2}));
  const auto pid = Knowledge::from_log(InfoSetting::PartialWithIdentities, log, 3);
  EXPECT_EQ(pid.prior_relays.size(), 2u);
  EXPECT_TRUE(pid.prior_times.empty());
  const auto pan = Knowledge::from_log(InfoSetting::PartialWithoutIdentities, log, 3);
  EXPECT_TRUE(pan.prior_relays.empty());
  EXPECT_EQ(pan.order, 3u);
  const auto none = Knowledge::from_log(InfoSetting::NoInformation, log, 3);
  EXPECT_EQ(none.order, 0u);
  EXPECT_DOUBLE_EQ(none.meeting_time, 0.3);
  EXPECT_EQ(code_of([&] { Knowledge::from_log(InfoSetting::Full, log, 0); }), Errc::IndexOutOfRange);
}

TEST(Scenarios, Shapes) {
  EXPECT_EQ(scenarios::heterogeneous_exponential().size(), 10u);
  EXPECT_TRUE(scenarios::heterogeneous_exponential().all_exponential());
  const RelaySet mixed = scenarios::heterogeneous_mixed();
  EXPECT_FALSE(mixed.all_exponential());
  const RelaySet expo = scenarios::heterogeneous_exponential();
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    EXPECT_EQ(mixed[i].id, expo[i].id);
    EXPECT_NEAR(mixed[i].lambda, expo[i].lambda, 1e-12);
    EXPECT_NEAR(mixed[i].mu, expo[i].mu, 1e-12);
  }
  EXPECT_EQ(scenarios::taxis().size(), 10u);
}
