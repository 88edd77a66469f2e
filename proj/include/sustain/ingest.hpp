#ifndef SUSTAIN_INGEST_HPP
#define SUSTAIN_INGEST_HPP

#include <map>
#include <string>
#include <vector>

#include "sustain/events.hpp"

namespace sustain {

enum class LogFormat { Csv, Jsonl };

// Parses events.csv / events.jsonl into one log per distinct project id,
// ordered by project id. Events are sorted, created_at computed, and the
// (project, actor, kind, timestamp, sequence_no) uniqueness invariant
// enforced. Nothing is rejected silently.
std::vector<ProjectEventLog> parse_event_log(const std::string& path,
                                             LogFormat format = LogFormat::Csv);

// projects.csv -> metadata/snapshot per project id.
std::map<std::string, ProjectInfo> parse_projects(const std::string& path);

// profiles.csv -> profile per actor id. Missing optional fields default
// to 0/false; count-ordering invariants are enforced.
std::map<std::string, ParticipantProfile> parse_profiles(const std::string& path);

// Attaches projects.csv metadata to parsed logs (by project id).
void attach_project_info(std::vector<ProjectEventLog>& corpus,
                         const std::map<std::string, ProjectInfo>& infos);

// Sub-log with events in [created_at, created_at + months*30d); metadata
// fields are carried through as cutoff snapshots and created_at is
// preserved. An empty window is valid.
ProjectEventLog window_events(const ProjectEventLog& log, int months);

// Writers (synth output and round-trip tests share these schemas).
void write_event_log_csv(const std::string& path,
                         const std::vector<ProjectEventLog>& corpus,
                         const std::string& provenance_params);
void write_projects_csv(const std::string& path,
                        const std::vector<ProjectInfo>& infos,
                        const std::string& provenance_params);
void write_profiles_csv(const std::string& path,
                        const std::map<std::string, ParticipantProfile>& profiles,
                        const std::string& provenance_params);

}  // namespace sustain

#endif
