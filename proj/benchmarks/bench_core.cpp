#include <random>

#include <benchmark/benchmark.h>

#include "ceeflow/ca.hpp"
#include "ceeflow/cluster.hpp"
#include "ceeflow/glm.hpp"
#include "ceeflow/ingest.hpp"

using namespace ceeflow;

namespace {

GlmProblem make_glm_problem(int n, int covariates, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, 0.7);
    GlmProblem p;
    p.design.resize(n, covariates + 1);
    p.design.col(0).setOnes();
    for (int j = 1; j <= covariates; ++j)
        for (int i = 0; i < n; ++i) p.design(i, j) = normal(rng);
    Eigen::VectorXd truth = Eigen::VectorXd::Constant(covariates + 1, 0.4);
    truth[0] = 2.0;
    p.response.resize(n);
    for (int i = 0; i < n; ++i) {
        std::poisson_distribution<long> pois(std::exp(p.design.row(i) * truth));
        p.response[i] = static_cast<double>(pois(rng));
    }
    return p;
}

Eigen::MatrixXd make_table(int rows, int cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> cell(0.5, 40.0);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cell(rng);
    return m;
}

void BM_PoissonGlmFit(benchmark::State& state) {
    const GlmProblem p =
        make_glm_problem(static_cast<int>(state.range(0)), 3, 42);
    for (auto _ : state) benchmark::DoNotOptimize(fit_poisson_glm(p));
}
BENCHMARK(BM_PoissonGlmFit)->Arg(56)->Arg(512);

void BM_CaFit(benchmark::State& state) {
    const int rows = static_cast<int>(state.range(0));
    std::vector<std::string> rid, cid;
    for (int i = 0; i < rows; ++i) rid.push_back("r" + std::to_string(i));
    for (int j = 0; j < 10; ++j) cid.push_back("c" + std::to_string(j));
    const ContingencyTable table(rid, cid, make_table(rows, 10, 7));
    for (auto _ : state) benchmark::DoNotOptimize(ca_fit(table));
}
BENCHMARK(BM_CaFit)->Arg(72)->Arg(400);

void BM_WardClustering(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coord(-5, 5);
    Eigen::MatrixXd pts(n, 3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 3; ++j) pts(i, j) = coord(rng);
    for (auto _ : state) benchmark::DoNotOptimize(hca_ward(pts));
}
BENCHMARK(BM_WardClustering)->Arg(64)->Arg(256);

void BM_Haversine(benchmark::State& state) {
    double lat = 52.2297;
    for (auto _ : state) {
        benchmark::DoNotOptimize(haversine_km(lat, 21.0122, 47.4979, 19.0402));
        lat += 1e-9;
    }
}
BENCHMARK(BM_Haversine);

}  // namespace

BENCHMARK_MAIN();
