#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "prymlab/corr.hpp"
#include "prymlab/cover.hpp"
#include "prymlab/prym.hpp"

namespace prymlab::cli {

/// Exit codes: 0 success or pass, 1 verdict fail, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main(int argc, char** argv);

/// Worker cap from PRYMLAB_THREADS, else the hardware concurrency.
unsigned worker_count();

// compact JSON, stable key order
std::string to_json(const prym::PrymResult& r);
std::string to_json(const corr::IdentityResult& r);
std::string to_json(const cover::Prediction& p);
std::string to_json(const prym::ProbeRow& row);

}  // namespace prymlab::cli
