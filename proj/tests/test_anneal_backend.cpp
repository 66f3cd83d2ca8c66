#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qdl/algolib.hpp"
#include "qdl/anneal_backend.hpp"
#include "qdl/errors.hpp"
#include "qdl/graph.hpp"
#include "qdl/json_io.hpp"
#include "test_support.hpp"

using namespace qdl;
using namespace qdl::test;

namespace {

IsingModel ring4_model() {
  Eigen::VectorXd h = Eigen::VectorXd::Zero(4);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
  for (const auto& e : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}) {
    j(e.first, e.second) = 1.0;
    j(e.second, e.first) = 1.0;
  }
  return IsingModel(std::move(h), std::move(j));
}

ContextDescriptor anneal_context(long long reads = 1000, long long sweeps = 1000,
                                 std::uint64_t seed = 42) {
  ContextDescriptor ctx;
  ctx.schema_id = std::string(kContextSchemaId);
  ctx.exec.engine = std::string(kAnnealEngine);
  ctx.exec.samples = reads;
  ctx.exec.seed = seed;
  AnnealSettings settings;
  settings.num_reads = reads;
  settings.num_sweeps = sweeps;
  ctx.anneal = settings;
  return ctx;
}

std::vector<int> spins_of_mask(std::uint32_t mask, int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = ((mask >> i) & 1u) ? -1 : 1;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Model construction and the energy functional
// ---------------------------------------------------------------------------

TEST_CASE("model construction enforces shape, symmetry, and a zero diagonal") {
  Eigen::VectorXd h = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(IsingModel(h, Eigen::MatrixXd::Zero(4, 4)), DimensionError);

  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(3, 3);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(IsingModel(h, asym), ParamError);

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(3, 3);
  diag(1, 1) = 0.5;
  CHECK_THROWS_AS(IsingModel(h, diag), ParamError);
}

TEST_CASE("the model is read from a problem operator only") {
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  const Graph g = parse_graph(read_text_file(data_path("graph_c4.json")));
  const IsingModel m = IsingModel::from_operator(build_ising_maxcut(g, spin));
  CHECK(m.n() == 4);
  CHECK(m.j()(0, 1) == 1.0);

  OperatorDescriptor other;
  other.rep_kind = RepKind::MixerRx;
  other.params = MixerRxParams{0.1};
  CHECK_THROWS_AS(IsingModel::from_operator(other), SchemaMismatchError);
}

TEST_CASE("energy of the four-cycle endpoints") {
  const IsingModel m = ring4_model();
  CHECK(m.energy({1, -1, 1, -1}) == -4.0);
  CHECK(m.energy({-1, 1, -1, 1}) == -4.0);
  CHECK(m.energy({1, 1, 1, 1}) == 4.0);
  CHECK(m.energy({-1, -1, -1, -1}) == 4.0);
}

TEST_CASE("the zero model has zero energy everywhere") {
  const IsingModel m(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(3, 3));
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    CHECK(m.energy(spins_of_mask(mask, 3)) == 0.0);
  }
}

TEST_CASE("energy rejects malformed spin vectors") {
  const IsingModel m = ring4_model();
  CHECK_THROWS_AS(m.energy({1, -1, 1}), DimensionError);
  CHECK_THROWS_AS(m.energy({1, -1, 1, 0}), DimensionError);
  CHECK_THROWS_AS(m.energy({1, -1, 1, 2}), DimensionError);
}

TEST_CASE("energy agrees with exhaustive recomputation on random models") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> weight(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Eigen::VectorXd h(n);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) h(i) = weight(rng);
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        const double w = weight(rng);
        j(i, k) = w;
        j(k, i) = w;
      }
    }
    const IsingModel m(h, j);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      CHECK(m.energy(spins_of_mask(mask, n)) ==
            doctest::Approx(ising_energy_of_mask(h, j, mask)).epsilon(1e-12));
    }
  }
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

TEST_CASE("the four-cycle anneal recovers both ground states almost surely") {
  const IsingModel m = ring4_model();
  const SampleSet ss = sample(m, anneal_context());

  long long total = 0, ground = 0;
  bool saw_0101 = false, saw_1010 = false;
  for (const auto& rec : ss.records) {
    total += rec.occurrences;
    if (rec.energy == -4.0) {
      ground += rec.occurrences;
      if (rec.spins == std::vector<int>{1, -1, 1, -1}) saw_0101 = true;
      if (rec.spins == std::vector<int>{-1, 1, -1, 1}) saw_1010 = true;
    }
  }
  CHECK(total == 1000);
  CHECK(saw_0101);
  CHECK(saw_1010);
  CHECK(static_cast<double>(ground) / static_cast<double>(total) >= 0.95);
}

TEST_CASE("a single strongly biased spin always relaxes") {
  Eigen::VectorXd h(1);
  h(0) = 5.0;
  const IsingModel m(h, Eigen::MatrixXd::Zero(1, 1));
  const SampleSet ss = sample(m, anneal_context(200, 500, 7));
  REQUIRE(ss.records.size() == 1);
  CHECK(ss.records[0].spins == std::vector<int>{-1});
  CHECK(ss.records[0].energy == -5.0);
  CHECK(ss.records[0].occurrences == 200);
}

TEST_CASE("the zero model samples roughly uniformly") {
  const IsingModel m(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(3, 3));
  const SampleSet ss = sample(m, anneal_context(1000, 200, 11));
  REQUIRE(ss.records.size() == 8);
  for (const auto& rec : ss.records) {
    CHECK(rec.energy == 0.0);
    // Five-sigma band around 125 under Binomial(1000, 1/8).
    CHECK(rec.occurrences > 60);
    CHECK(rec.occurrences < 190);
  }
}

TEST_CASE("sample sets are sorted, audited, and complete") {
  const IsingModel m = ring4_model();
  const SampleSet ss = sample(m, anneal_context(500, 300, 3));

  long long total = 0;
  for (std::size_t i = 0; i < ss.records.size(); ++i) {
    const auto& rec = ss.records[i];
    total += rec.occurrences;
    CHECK(rec.occurrences > 0);
    // The emitted energy is the recomputed energy, bit for bit within 1e-12.
    CHECK(std::abs(rec.energy - m.energy(rec.spins)) <= 1e-12);
    if (i > 0) {
      const auto& prev = ss.records[i - 1];
      const bool ordered = prev.energy < rec.energy ||
                           (prev.energy == rec.energy && prev.spins < rec.spins);
      CHECK(ordered);
    }
  }
  CHECK(total == 500);
  CHECK(ss.num_reads == 500);
  CHECK(ss.num_sweeps == 300);
  CHECK(ss.seed == 3);
}

TEST_CASE("sampling is deterministic in the seed") {
  const IsingModel m = ring4_model();
  const SampleSet a = sample(m, anneal_context(100, 100, 5));
  const SampleSet b = sample(m, anneal_context(100, 100, 5));
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].spins == b.records[i].spins);
    CHECK(a.records[i].energy == b.records[i].energy);
    CHECK(a.records[i].occurrences == b.records[i].occurrences);
  }
}

TEST_CASE("spin-flip symmetry holds exactly when the field term vanishes") {
  const IsingModel m = ring4_model();
  const SampleSet ss = sample(m, anneal_context(200, 200, 13));
  for (const auto& rec : ss.records) {
    std::vector<int> flipped = rec.spins;
    for (int& s : flipped) s = -s;
    CHECK(m.energy(rec.spins) == m.energy(flipped));
  }
}

TEST_CASE("sampled energies never undercut the exhaustive ground energy") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> weight(-1.5, 1.5);
  int exact_hits = 0;
  const int trials = 10;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);  // up to 8 sites
    Eigen::VectorXd h(n);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) h(i) = weight(rng);
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        const double w = (rng() % 2) ? weight(rng) : 0.0;
        j(i, k) = w;
        j(k, i) = w;
      }
    }
    const IsingModel m(h, j);
    const GroundSummary oracle = brute_force_ground(h, j);
    const SampleSet ss = sample(m, anneal_context(200, 1000, 1000 + trial));
    REQUIRE_FALSE(ss.records.empty());
    const double sampled_min = ss.records.front().energy;
    CAPTURE(trial);
    CHECK(sampled_min >= oracle.energy - 1e-9);
    if (std::abs(sampled_min - oracle.energy) <= 1e-9) ++exact_hits;
  }
  // The documented reliability target for small instances at default sweeps.
  CHECK(exact_hits == trials);
}

TEST_CASE("the per-read seed derivation is a pinned contract") {
  // Documented rule: SplitMix64 finalizer over base + (r+1) * 0x9E3779B97F4A7C15.
  const auto expected = [](std::uint64_t base, long long r) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(r) + 1);
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  };
  for (const std::uint64_t base : {0ull, 42ull, 0xFFFFFFFFFFFFFFFFull}) {
    for (const long long r : {0ll, 1ll, 2ll, 999ll}) {
      CHECK(read_subseed(base, r) == expected(base, r));
    }
  }
  CHECK(read_subseed(42, 0) != read_subseed(42, 1));
  CHECK(read_subseed(42, 0) != read_subseed(43, 0));
}

TEST_CASE("misconfigured anneal settings are rejected at sampling time") {
  const IsingModel m = ring4_model();

  ContextDescriptor bad_beta = anneal_context();
  bad_beta.anneal->beta_range = {10.0, 0.1};
  CHECK_THROWS_AS(sample(m, bad_beta), ConfigError);

  ContextDescriptor equal_beta = anneal_context();
  equal_beta.anneal->beta_range = {1.0, 1.0};
  CHECK_THROWS_AS(sample(m, equal_beta), ConfigError);

  ContextDescriptor zero_reads = anneal_context();
  zero_reads.anneal->num_reads = 0;
  CHECK_THROWS_AS(sample(m, zero_reads), ConfigError);

  ContextDescriptor zero_sweeps = anneal_context();
  zero_sweeps.anneal->num_sweeps = 0;
  CHECK_THROWS_AS(sample(m, zero_sweeps), ConfigError);
}

// ---------------------------------------------------------------------------
// Decoding spins into the shared counts shape
// ---------------------------------------------------------------------------

TEST_CASE("spins decode to bitstrings by the sign convention") {
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  const ResultSchema rs = make_readout_schema(spin);

  SampleSet ss;
  ss.num_reads = 1000;
  ss.records.push_back({{1, -1, 1, -1}, -4.0, 600});
  ss.records.push_back({{-1, 1, -1, 1}, -4.0, 400});

  const Counts counts = decode_samples(ss, rs);
  REQUIRE(counts.size() == 2);
  CHECK(counts.at("0101") == 600);
  CHECK(counts.at("1010") == 400);
}

TEST_CASE("decoding honors the clbit order") {
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 3);
  ResultSchema rs = make_readout_schema(spin);
  std::reverse(rs.clbit_order.begin(), rs.clbit_order.end());

  SampleSet ss;
  ss.num_reads = 1;
  ss.records.push_back({{1, 1, -1}, 0.0, 1});  // carrier 2 is the only '1'

  const Counts counts = decode_samples(ss, rs);
  CHECK(counts.at("100") == 1);
}

TEST_CASE("an empty sample set decodes to empty counts") {
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  CHECK(decode_samples(SampleSet{}, make_readout_schema(spin)).empty());
}

TEST_CASE("decoding rejects schema mismatches") {
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  SampleSet ss;
  ss.records.push_back({{1, -1, 1, -1}, -4.0, 1});

  ResultSchema wrong_type = make_readout_schema(spin);
  wrong_type.datatype = MeasurementSemantics::AsInt;
  CHECK_THROWS_AS(decode_samples(ss, wrong_type), SchemaMismatchError);

  ResultSchema short_order = make_readout_schema(spin);
  short_order.clbit_order.pop_back();
  CHECK_THROWS_AS(decode_samples(ss, short_order), SchemaMismatchError);

  ResultSchema out_of_range = make_readout_schema(spin);
  out_of_range.clbit_order[3].index = 9;
  CHECK_THROWS_AS(decode_samples(ss, out_of_range), SchemaMismatchError);
}
