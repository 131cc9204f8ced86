#pragma once

#include <string>
#include <vector>

#include "fairmanna/axioms.hpp"
#include "fairmanna/model.hpp"
#include "fairmanna/paperlab.hpp"
#include "fairmanna/reductions.hpp"
#include "fairmanna/solvers.hpp"

namespace fairmanna::io {

// Rationals travel as JSON integers when whole and as "p/q" strings otherwise.

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

/// Rows are agents, the header row carries the item labels. Additive only.
Instance instance_from_csv(const std::string& text);

/// Dispatches on a ".csv" suffix, otherwise parses JSON.
Instance load_instance(const std::string& path);

std::string allocation_to_json(const Instance& inst, const Allocation& alloc);
Allocation allocation_from_json(const Instance& inst, const std::string& text);

std::string verdict_to_json(const Instance& inst, const Verdict& verdict);
std::string search_report_to_json(const Instance& inst, const SearchReport& report);
std::string solve_result_to_json(const Instance& inst, const std::string& method,
                                 const SolveResult& result);

std::string x3c_to_json(const reductions::X3CInstance& x3c);
reductions::X3CInstance x3c_from_json(const std::string& text);
std::string reduced_to_json(const reductions::ReducedInstance& red);

std::string claims_to_json(const std::vector<paperlab::ClaimReport>& reports);
std::string claims_to_csv(const std::vector<paperlab::ClaimReport>& reports);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fairmanna::io
