#pragma once

#include <iosfwd>
#include <string>

#include "lamod/quandle.hpp"

namespace lamod::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitVerifyFailed = 4;

inline constexpr const char* kSchemaVersion = "1";

/// Module spec grammar: "p^e1^n1 x p^e2^n2 ... ; row; row; ..." with each
/// row a comma-separated list of integers, or "0" for the zero module.
/// Examples:
///   "2^2^1 x 2^1^1 ; 3,0 ; 1,1"   is (Z4 x Z2, [[3,0],[1,1]])
///   "3^1^1 ; 2"                    is (Z3, t = 2)
LambdaModule parse_module_spec(const std::string& spec);

/// Oracle budget: LAMBDA_CLASSIFY_BUDGET (number of group-automorphism
/// elements) when set, the library default otherwise.
i64 budget_from_env();

// Payload renderers (deterministic byte-for-byte output).
std::string render_classify(i64 p, int n, const std::string& format);
std::string render_quandles(i64 p, int n, bool connected_only, bool with_tables,
                            const std::string& format);
std::string render_verify(const VerificationReport& report);
std::string render_extend(const LambdaModule& input, int target_exponent);
std::string render_isomorphic_modules(const LambdaModule& a, const LambdaModule& b, i64 budget,
                                      bool* result);
std::string render_isomorphic_quandles(const LambdaModule& a, const LambdaModule& b, i64 budget,
                                       bool* result);

/// Entry point used by the binary; argv excludes the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lamod::cli
