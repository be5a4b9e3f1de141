// JSON forms of solutions, reports and clusterings; field layouts are
// documented in docs/model_reference.md.
#ifndef SGC_SERIALIZE_HPP
#define SGC_SERIALIZE_HPP

#include <json.hpp>

#include "sgc/analysis.hpp"
#include "sgc/baselines.hpp"
#include "sgc/solver.hpp"

namespace sgc {

nlohmann::json solution_to_json(const Solution& s);
Solution solution_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ClusterReport& r);
nlohmann::json clustering_to_json(const SoftClustering& c);
nlohmann::json class_stats_to_json(const BatchStats& stats);

}  // namespace sgc

#endif
