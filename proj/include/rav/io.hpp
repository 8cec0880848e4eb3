#ifndef RAV_IO_HPP
#define RAV_IO_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rav/noisesim.hpp"
#include "rav/protocol.hpp"

namespace rav {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// --- circuit files -------------------------------------------------------
// Line-delimited JSON: a header object followed by one layer object per
// line. Human-diffable and append-friendly.

void write_sequence(std::ostream& out, const VerificationSequence& seq);
VerificationSequence read_sequence(std::istream& in);

void save_sequence(const std::string& path, const VerificationSequence& seq);
VerificationSequence load_sequence(const std::string& path);

// --- shot record files ---------------------------------------------------
// Plain tab-separated text with a header row, so externally produced shot
// data can be ingested without bindings.

struct ShotRecord {
    std::string sequence_id;
    int x0 = 0;
    int shot_index = 0;
    int outcome = 0;
};

struct SequenceShots {
    int x0 = 0;
    std::vector<int> outcomes;  // in recorded shot order
};

void write_shot_records(std::ostream& out,
                        const std::vector<ShotRecord>& records);
// Grouped by sequence id, preserving shot order.
std::map<std::string, SequenceShots> read_shot_records(std::istream& in);

void save_shot_records(const std::string& path,
                       const std::vector<ShotRecord>& records);
std::map<std::string, SequenceShots> load_shot_records(
    const std::string& path);

// --- experiment manifests ------------------------------------------------

struct Manifest {
    ExperimentPlan plan;
    NoiseModel noise = Noiseless{};
    int shots = 500;
    std::vector<int> shot_schedule = {5, 10, 25, 50, 100};
};

Manifest parse_manifest(std::istream& in);
Manifest load_manifest(const std::string& path);

NoiseModel parse_noise(const std::string& model, double parameter);
std::string noise_name(const NoiseModel& noise);

// --- generation index ----------------------------------------------------

struct IndexEntry {
    int id = 0;
    int m0 = 0;
    std::uint64_t seed = 0;
    std::string status;  // "ok" or an error message
    std::string rav_path;
    std::string xeb_path;
};

struct ExperimentIndex {
    int n_qubits = 0;
    std::vector<IndexEntry> entries;
};

void save_index(const std::string& path, const ExperimentIndex& index);
ExperimentIndex load_index(const std::string& path);

}  // namespace rav

#endif
