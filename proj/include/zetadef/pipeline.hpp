#pragma once

#include <nlohmann/json_fwd.hpp>

#include "zetadef/deform.hpp"
#include "zetadef/oracle.hpp"
#include "zetadef/zeta.hpp"

#include <optional>

namespace zetadef {

enum class Method { SqrtP, Linear, Both, Oracle };

struct JobSpec {
    std::int64_t p = 0;
    int a = 1;
    int n = 0, d = 0;
    std::vector<std::int64_t> f;      // field modulus coefficients, length a+1, monic
    HomogPoly P1;                     // target hypersurface
    std::vector<std::int64_t> avec;   // diagonal coefficients (default all 1)
    Method method = Method::Both;
    std::optional<int> precision;     // N_target override
    std::uint64_t seed = 0;
    int retries = 3;
    std::uint64_t max_oracle_size = 1000000000ull;
    bool oracle_check = false;        // cross-check counts against enumeration
    int oracle_imax = 0;              // 0: automatic
    int threads = 1;
    bool verbose = false;
    int K_scale = 1;                  // t-adic truncation multiplier (validation)
};

JobSpec job_from_json(const nlohmann::json& j);
nlohmann::json job_to_json(const JobSpec& job);

struct RunResult {
    nlohmann::json document;
    bool checks_ok = true;
};

/// Steps 1-4 plus validation; deterministic for a fixed JobSpec.
RunResult run(const JobSpec& job);

/// Enumeration-only run (the `oracle` subcommand).
RunResult run_oracle(const JobSpec& job);

/// Default output precision from the chi coefficient bound.
int default_n_target(std::int64_t p, int a, int n, int b);

std::string bigint_str(const BigInt& v);

}  // namespace zetadef
