#pragma once

#include <cstdint>
#include <string>

#include "causeway/cause_defs.hpp"
#include "causeway/properties.hpp"
#include "causeway/responsibility.hpp"
#include "causeway/scm.hpp"

namespace causeway::io {

// Value labels resolved through the model's label functions; falls back to
// the numeric key.
std::string value_label(const ScmInstance& scm, const VariableId& var, std::uint64_t value);

// {states:[...], observations:[[...]], info:[[agent][t]], actions:[[agent][t]], seed:u64}
std::string trajectory_json(const ScmInstance& scm, const Trajectory& traj);

// {definition, event, seed, max_size, pairs:[{cause:[[var,val]],
//  contingency:[[var,val]], cf:[val], improvement?:int}]}
std::string causeset_json(const Engine& engine, const CauseSet& set);
std::string causeset_csv(const Engine& engine, const CauseSet& set);

// Stable FNV-1a hash of the canonical cause-set JSON.
std::uint64_t causeset_hash(const Engine& engine, const CauseSet& set);

// {method, degrees:{"<agent>": "p/q"}, source_causeset_hash}
std::string profile_json(const ResponsibilityProfile& profile, std::uint64_t source_hash);

// Cause-set schema plus violations arrays and summary counts.
std::string violation_report_json(const Engine& engine, const CauseSet& set,
                                  const ViolationReport& ce, const ViolationReport& acwm);

}  // namespace causeway::io
