#pragma once

#include <string>
#include <vector>

#include "strap/bench.hpp"
#include "strap/model.hpp"
#include "strap/search.hpp"

namespace strap {

// All file formats carry "format":"strap/1".

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

std::string plan_to_json(const Plan& plan, const std::string& instance_ref);
Plan plan_from_json(const std::string& text, std::string* instance_ref = nullptr);
Plan load_plan(const std::string& path, std::string* instance_ref = nullptr);
void save_plan(const Plan& plan, const std::string& instance_ref, const std::string& path);

std::string stats_to_json(const SearchStats& stats, std::uint64_t seed);

std::string summary_to_json(const std::vector<std::pair<int, std::vector<PlannerSummary>>>&
                                per_n_summaries,
                            Embodiment embodiment, double density, double timeout_s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace strap
