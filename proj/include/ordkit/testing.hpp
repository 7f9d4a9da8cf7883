#pragma once

namespace ordkit::testing {

/// Fault-injection switches used by the verification harness to confirm
/// that the law suites actually detect broken closure arithmetic. Always
/// `none` outside mutation runs; set only from single-threaded test code.
enum class Mutation {
  none,
  gamma_skip_downclose,   // drop the down-closure between closure rounds
  upsilon_u_quantifier,   // one-step operator draws witnesses from U, not U+
};

Mutation mutation();
void set_mutation(Mutation m);

}  // namespace ordkit::testing
