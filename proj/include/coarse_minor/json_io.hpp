#pragma once

#include <coarse_minor/distortion.hpp>
#include <coarse_minor/fat_model.hpp>
#include <coarse_minor/minor_check.hpp>
#include <coarse_minor/partition.hpp>
#include <coarse_minor/theta_finder.hpp>

#include <json.hpp>

#include <optional>
#include <string>

namespace coarse_minor {

using Json = nlohmann::json;

class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Schema tags; readers reject documents carrying a different tag.
inline constexpr const char* kModelSchema = "coarse-minor/fat-model/v1";
inline constexpr const char* kPartitionSchema = "coarse-minor/partition/v1";
inline constexpr const char* kPartitionSetSchema = "coarse-minor/partition-set/v1";
inline constexpr const char* kFatnessReportSchema = "coarse-minor/fatness-report/v1";
inline constexpr const char* kPartitionReportSchema = "coarse-minor/partition-report/v1";
inline constexpr const char* kQIReportSchema = "coarse-minor/qi-report/v1";
inline constexpr const char* kAuditSchema = "coarse-minor/audit-outcome/v1";
inline constexpr const char* kThetaQuerySchema = "coarse-minor/theta-query/v1";
inline constexpr const char* kMinorSchema = "coarse-minor/minor-result/v1";
inline constexpr const char* kMergeDumpSchema = "coarse-minor/merge-dump/v1";
inline constexpr const char* kDistortionSchema = "coarse-minor/distortion-report/v1";

Json to_json(const PatternGraph& p);
PatternGraph pattern_from_json(const Json& j);

Json to_json(const FatModel& m);
FatModel model_from_json(const Json& j);

Json to_json(const FatnessReport& r);
Json to_json(const ConstantsProfile& p);
ConstantsProfile profile_from_json(const Json& j);

Json to_json(const LayeredPartition& lp, const ConstantsProfile& profile);
struct PartitionDocument {
  LayeredPartition partition;
  std::optional<ConstantsProfile> profile;
};
PartitionDocument partition_from_json(const Json& j);

Json to_json(const PartitionReport& r);
Json to_json(const QIReport& r, bool include_map = false);
Json to_json(const AuditOutcome& a);
Json to_json(const MinorResult& r);
Json to_json(const MergeRecord& r);
Json to_json(const DistortionReport& r);

VertexSet vertex_set_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);  // "-" writes stdout

}  // namespace coarse_minor
