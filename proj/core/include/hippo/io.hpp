#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "hippo/coding.hpp"
#include "hippo/complexity.hpp"
#include "hippo/family.hpp"
#include "hippo/measure.hpp"
#include "hippo/randomness_tests.hpp"

namespace hippo::io {

/// "-" stands for the empty string in every line-oriented format.
std::string node_token(const BitString& x);
BitString parse_node_token(const std::string& tok);

/// Measure specification, structured text:
///   kind bernoulli | markov | hidden-seed
///   p a/2^b                     (bernoulli)
///   initial a/2^b               (markov: P(first bit = 1))
///   row0 a/2^b a/2^b            (markov: P(next=0|0), P(next=1|0); must sum to 1)
///   row1 a/2^b a/2^b
///   seed hex                    (hidden-seed)
std::shared_ptr<Measure> parse_measure_spec(std::istream& in);
std::string serialize_measure_spec(const Measure& m);

void write_table(std::ostream& out, const ComplexityTable& t);
ComplexityTable read_table(std::istream& in);

void write_family(std::ostream& out, const TestFamily& fam);
TestFamily read_family(std::istream& in);

void write_levelled_code(std::ostream& out, const LevelledCode& lc);

nlohmann::json verification_report_json(const VerificationReport& r);
nlohmann::json feasibility_report_json(const FeasibilityReport& r);
nlohmann::json deficiency_profile_json(const DeficiencyProfile& p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace hippo::io
