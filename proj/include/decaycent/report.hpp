#pragma once

// Serialization of every artifact the command-line tool writes.
//
// Each artifact carries a version string, a config echo and the conventions
// used (rank definition, percentile rule, tie handling). CSV files put these
// in leading '#' comment lines before the header row; JSON files under "meta"
// and "config". Reals are printed with 9 significant digits.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "decaycent/centrality.hpp"
#include "decaycent/delta_grid.hpp"
#include "decaycent/ordering.hpp"
#include "decaycent/simulation.hpp"

namespace decaycent::report {

std::string version();

/// "%.9g"
std::string format_real(double v);

/// Integer as a JSON number when it fits in 64 bits, decimal string otherwise.
nlohmann::json wide_to_json(WideInt v);

nlohmann::json conventions();
nlohmann::json meta();
nlohmann::json verdict_json(const ComparisonVerdict& v);
nlohmann::json conditions_json(const ConditionReport& r);

/// '#'-prefixed version, config and conventions lines.
void write_comment_block(std::ostream& out, const nlohmann::json& config);

// compute

void write_table_csv(std::ostream& out, const CentralityTable& table, const DeltaGrid& grid,
                     const MaximizerSets& sets, const nlohmann::json& config);
nlohmann::json table_json(const CentralityTable& table, const DeltaGrid& grid, const MaximizerSets& sets,
                          bool full, const nlohmann::json& config);

// compare

/// Both profiles and farness vectors, every verdict, the fired conditions,
/// the difference coefficients, and DC_i - DC_j sampled on `grid` (direct
/// and in both factored forms).
nlohmann::json compare_json(const CentralityTable& table, NodeId i, NodeId j, const DeltaGrid& grid,
                            const nlohmann::json& config);

// simulate

nlohmann::json experiment_config_json(const ExperimentConfig& config);

/// Config echo for CSV artifacts: omits settings that do not affect results
/// (worker count, output location).
nlohmann::json result_config_json(const ExperimentConfig& config);

void write_records_header(std::ostream& out);
void write_record_rows(std::ostream& out, const TrialRecord& record, const DeltaGrid& grid);
void write_aggregate_csv(std::ostream& out, const AggregateStats& stats);
nlohmann::json summary_json(const ExperimentConfig& config, const ExperimentResult& result,
                            const nlohmann::json& run_config);

}  // namespace decaycent::report
