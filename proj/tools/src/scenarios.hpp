#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "netmet/classify.hpp"

namespace netmet::cli {

// Synthetic trace-log generators. Every generator is deterministic for a
// fixed seed and writes the canonical text log format.

/// One trace per ordered node pair per round, following the canonical
/// topology's routing.
void write_topology_log(TopologyKind kind, std::size_t n, std::size_t rounds,
                        std::ostream& out);

/// The two-endpoint New Jersey dataset: 3777 traces over three paths with
/// frequencies 552/1336/1889, interleaved by a seeded shuffle.
void write_nj_table_log(std::uint64_t seed, std::ostream& out);

/// One pair alternating deterministically between two routes: over
/// `rounds` traces each route is observed exactly rounds/2 times (the
/// load-balancing frequency bump at half the collection length).
void write_lb5050_log(std::size_t rounds, std::ostream& out);

/// One pair on a primary route until `switch_round`, then a backup route.
void write_failover_log(std::size_t rounds, std::size_t switch_round, std::ostream& out);

/// Two tight 4-endpoint clusters joined by a long backbone; every ordered
/// pair is traced once per round. Intra-cluster paths have 2 hops,
/// inter-cluster paths 6.
void write_two_clusters_log(std::size_t rounds, std::ostream& out);

/// Hub-dominated corporate network: n offices whose every path crosses one
/// core router. Its edge-similarity signature sits close to the star's.
void write_enterprise_log(std::size_t offices, std::size_t rounds, std::ostream& out);

/// Dispatch by scenario name: nj-table, lb-5050, failover, two-clusters,
/// enterprise.
void write_scenario_log(const std::string& name, std::size_t n, std::size_t rounds,
                        std::size_t switch_round, std::uint64_t seed, std::ostream& out);

}  // namespace netmet::cli
