#include "rav/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rav {

using nlohmann::json;

namespace {

json gate_to_json(const GateInstance& g) {
    json j;
    j["kind"] = gate_kind_name(g.kind);
    json targets = json::array();
    for (int i = 0; i < gate_arity(g.kind); ++i)
        targets.push_back(g.targets[i]);
    j["targets"] = std::move(targets);
    j["theta"] = g.theta;
    if (g.kind == GateKind::R || g.kind == GateKind::MS)
        j["phi"] = g.phi;
    return j;
}

GateInstance gate_from_json(const json& j) {
    GateInstance g;
    g.kind = gate_kind_from_name(j.at("kind").get<std::string>());
    const auto& targets = j.at("targets");
    if (static_cast<int>(targets.size()) != gate_arity(g.kind))
        throw std::invalid_argument("gate target count does not match kind");
    for (std::size_t i = 0; i < targets.size(); ++i)
        g.targets[i] = targets[i].get<int>();
    g.theta = j.at("theta").get<double>();
    g.phi = j.value("phi", 0.0);
    return g;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

void write_sequence(std::ostream& out, const VerificationSequence& seq) {
    json header;
    header["format_version"] = kFormatVersion;
    header["tool_version"] = kToolVersion;
    header["type"] = "circuit";
    header["kind"] = sequence_kind_name(seq.kind);
    header["n_qubits"] = seq.n_qubits;
    header["seed"] = seq.seed;
    if (seq.rav) {
        header["m0"] = seq.rav->m0;
        header["m_inv"] = seq.rav->m_inv;
        header["epsilon"] = seq.rav->epsilon;
    }
    out << header.dump() << "\n";
    for (const auto& layer : seq.layers) {
        json jl;
        json gates = json::array();
        for (const auto& g : layer.gates)
            gates.push_back(gate_to_json(g));
        jl["gates"] = std::move(gates);
        out << jl.dump() << "\n";
    }
}

VerificationSequence read_sequence(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("circuit file: missing header");
    json header = json::parse(line);
    if (header.value("type", "") != "circuit")
        throw std::invalid_argument("circuit file: not a circuit header");

    VerificationSequence seq;
    seq.kind = sequence_kind_from_name(header.at("kind").get<std::string>());
    seq.n_qubits = header.at("n_qubits").get<int>();
    seq.seed = header.at("seed").get<std::uint64_t>();
    if (seq.kind == SequenceKind::RAV) {
        RavInfo info;
        info.m0 = header.at("m0").get<int>();
        info.m_inv = header.at("m_inv").get<int>();
        info.epsilon = header.at("epsilon").get<double>();
        seq.rav = info;
    }

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        json jl;
        try {
            jl = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument("circuit file line " +
                                        std::to_string(lineno) + ": " +
                                        e.what());
        }
        Layer layer;
        for (const auto& jg : jl.at("gates")) {
            try {
                layer.gates.push_back(gate_from_json(jg));
            } catch (const std::exception& e) {
                throw std::invalid_argument("circuit file line " +
                                            std::to_string(lineno) + ": " +
                                            e.what());
            }
        }
        seq.layers.push_back(std::move(layer));
    }
    return seq;
}

void save_sequence(const std::string& path, const VerificationSequence& seq) {
    auto out = open_output(path);
    write_sequence(out, seq);
}

VerificationSequence load_sequence(const std::string& path) {
    auto in = open_input(path);
    return read_sequence(in);
}

void write_shot_records(std::ostream& out,
                        const std::vector<ShotRecord>& records) {
    out << "# format_version " << kFormatVersion << "\n";
    out << "sequence_id\tx0\tshot_index\toutcome\n";
    for (const auto& r : records)
        out << r.sequence_id << '\t' << r.x0 << '\t' << r.shot_index << '\t'
            << r.outcome << '\n';
}

std::map<std::string, SequenceShots> read_shot_records(std::istream& in) {
    std::map<std::string, SequenceShots> groups;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) {
            if (line.find("sequence_id") == std::string::npos)
                throw std::invalid_argument("shot file: missing header row");
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        ShotRecord r;
        if (!(ss >> r.sequence_id >> r.x0 >> r.shot_index >> r.outcome))
            throw std::invalid_argument("shot file: malformed row: " + line);
        auto& group = groups[r.sequence_id];
        group.x0 = r.x0;
        group.outcomes.push_back(r.outcome);
    }
    return groups;
}

void save_shot_records(const std::string& path,
                       const std::vector<ShotRecord>& records) {
    auto out = open_output(path);
    write_shot_records(out, records);
}

std::map<std::string, SequenceShots> load_shot_records(
    const std::string& path) {
    auto in = open_input(path);
    return read_shot_records(in);
}

NoiseModel parse_noise(const std::string& model, double parameter) {
    if (model == "noiseless")
        return Noiseless{};
    if (model == "global_depolarizing")
        return GlobalDepolarizing{parameter};
    if (model == "per_gate_depolarizing")
        return PerGateDepolarizing{parameter};
    if (model == "coherent_overrotation")
        return CoherentOverrotation{parameter};
    throw std::invalid_argument("unknown noise model: " + model);
}

std::string noise_name(const NoiseModel& noise) {
    if (std::holds_alternative<GlobalDepolarizing>(noise))
        return "global_depolarizing";
    if (std::holds_alternative<PerGateDepolarizing>(noise))
        return "per_gate_depolarizing";
    if (std::holds_alternative<CoherentOverrotation>(noise))
        return "coherent_overrotation";
    return "noiseless";
}

Manifest parse_manifest(std::istream& in) {
    json j = json::parse(in);
    Manifest manifest;
    ExperimentPlan& plan = manifest.plan;

    const int n = j.at("n_qubits").get<int>();
    if (j.contains("design") && j["design"].is_object()) {
        LayerDesign d;
        d.n_qubits = n;
        for (const auto& js : j["design"].at("slots")) {
            LayerDesign::Slot slot;
            slot.kind = gate_kind_from_name(js.at("kind").get<std::string>());
            slot.count = js.at("count").get<int>();
            slot.theta = {js.at("theta").at(0).get<double>(),
                          js.at("theta").at(1).get<double>()};
            if (js.contains("phi"))
                slot.phi = {js.at("phi").at(0).get<double>(),
                            js.at("phi").at(1).get<double>()};
            d.slots.push_back(slot);
        }
        plan.design = std::move(d);
    } else {
        plan.design = LayerDesign::standard(n);
    }

    plan.m0_range = j.at("m0_range").get<std::vector<int>>();
    plan.epsilon_target = j.value("epsilon_target", 0.04);
    plan.sequences_per_plan = j.value("pairs", 50);
    plan.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("stoq")) {
        const auto& js = j["stoq"];
        plan.stoq.num_iterations = js.value("iterations", 10000);
        plan.stoq.delta_beta = js.value("delta_beta", 0.01);
        plan.stoq.p_append = js.value("p_append", 0.5);
        plan.max_restarts = js.value("max_restarts", kDefaultMaxRestarts);
    }

    if (j.contains("noise")) {
        const auto& jn = j["noise"];
        const std::string model = jn.at("model").get<std::string>();
        double parameter = 0.0;
        if (jn.contains("lambda"))
            parameter = jn["lambda"].get<double>();
        else if (jn.contains("rate"))
            parameter = jn["rate"].get<double>();
        else if (jn.contains("delta"))
            parameter = jn["delta"].get<double>();
        manifest.noise = parse_noise(model, parameter);
    }
    manifest.shots = j.value("shots", 500);
    if (j.contains("shot_schedule"))
        manifest.shot_schedule = j["shot_schedule"].get<std::vector<int>>();
    return manifest;
}

Manifest load_manifest(const std::string& path) {
    auto in = open_input(path);
    return parse_manifest(in);
}

void save_index(const std::string& path, const ExperimentIndex& index) {
    json j;
    j["format_version"] = kFormatVersion;
    j["tool_version"] = kToolVersion;
    j["type"] = "index";
    j["n_qubits"] = index.n_qubits;
    json entries = json::array();
    for (const auto& e : index.entries) {
        json je;
        je["id"] = e.id;
        je["m0"] = e.m0;
        je["seed"] = e.seed;
        je["status"] = e.status;
        je["rav"] = e.rav_path;
        je["xeb"] = e.xeb_path;
        entries.push_back(std::move(je));
    }
    j["pairs"] = std::move(entries);
    auto out = open_output(path);
    out << j.dump(2) << "\n";
}

ExperimentIndex load_index(const std::string& path) {
    auto in = open_input(path);
    json j = json::parse(in);
    if (j.value("type", "") != "index")
        throw std::invalid_argument("index file: wrong type");
    ExperimentIndex index;
    index.n_qubits = j.at("n_qubits").get<int>();
    for (const auto& je : j.at("pairs")) {
        IndexEntry e;
        e.id = je.at("id").get<int>();
        e.m0 = je.at("m0").get<int>();
        e.seed = je.at("seed").get<std::uint64_t>();
        e.status = je.at("status").get<std::string>();
        e.rav_path = je.at("rav").get<std::string>();
        e.xeb_path = je.at("xeb").get<std::string>();
        index.entries.push_back(std::move(e));
    }
    return index;
}

}  // namespace rav
