#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lukyanov/model.hpp"
#include "lukyanov/oracle.hpp"
#include "lukyanov/tba.hpp"

namespace lukyanov {

struct Check {
    std::string name;
    double value = 0, tol = 0;
    bool pass = false;
};

// Invariant suites run at one parameter point. The oracle comparison uses its own N (oracle_n).
std::vector<Check> run_checks(const ModelParams& p, std::shared_ptr<const TbaSolution> tba, const OracleConfig& oc,
                              double oracle_n, int w_sign = -1);

// sup over Im lambda in {0, +-0.4}, |Re lambda| <= 30 of the factorisation / reflection / conjugation errors
struct WhIdentityErrors {
    double factorisation = 0, reflection = 0, conjugation = 0;
};
WhIdentityErrors wh_identity_errors(double b);

}  // namespace lukyanov
