// Copyright 2026 The dqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqc/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dqc/error.hpp"
#include "dqc/qnc.hpp"

namespace dqc::cli {

namespace {

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::InvalidConfig, "cannot open config '" + path + "'");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorKind::InvalidConfig, "malformed JSON in '" + path + "': " + e.what());
    }
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::InvalidConfig, "cannot write '" + path + "'");
    }
    out << text;
}

std::string dump(const nlohmann::json &j) {
    return j.dump(2) + "\n";
}

QubitState qubit_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw Error(ErrorKind::InvalidConfig, "qubit state must be [alpha, beta]");
    }
    return {complex_from_json(j[0]), complex_from_json(j[1])};
}

ZCorrection z_correction_from_string(const std::string &s) {
    if (s == "conjugated") {
        return ZCorrection::conjugated;
    }
    if (s == "g_operator") {
        return ZCorrection::g_operator;
    }
    throw Error(ErrorKind::InvalidConfig, "z_correction must be conjugated or g_operator");
}

XCorrection x_correction_from_string(const std::string &s) {
    if (s == "conjugated") {
        return XCorrection::conjugated;
    }
    if (s == "f_parity") {
        return XCorrection::f_parity;
    }
    if (s == "literal_f") {
        return XCorrection::literal_f;
    }
    throw Error(ErrorKind::InvalidConfig, "x_correction must be conjugated, f_parity or literal_f");
}

// The synchronous circuit plus the local suffix the async variant runs before
// measurement, so both target the same reference state.
ProtocolCircuit synchronous_fallback(const ProtocolInputs &inputs) {
    if (inputs.kind == ProtocolKind::async_teledata) {
        ProtocolCircuit pc = build_teledata(inputs.psi);
        pc.circuit.barrier("fallback-suffix").gate(GateSpec::unitary(inputs.u), {3});
        return pc;
    }
    ProtocolCircuit sync = build_telegate(inputs.psi, inputs.phi);
    nlohmann::json widened = to_json(sync.circuit);
    widened["num_qubits"] = 5;
    Circuit c = circuit_from_json(widened);
    c.barrier("fallback-suffix").gate(GateKind::cnot, {3, 4}).gate(GateSpec::unitary(inputs.u), {4});
    ProtocolLayout layout{{Role::a, Role::photon_a, Role::photon_b, Role::b0, Role::b1}, inputs.psi, inputs.phi};
    return {std::move(c), std::move(layout), {0, 3, 4}};
}

}  // namespace

SimulateRequest simulate_request_from_json(const nlohmann::json &config) {
    if (!config.is_object()) {
        throw Error(ErrorKind::InvalidConfig, "simulate config must be a JSON object");
    }
    try {
        SimulateRequest req;
        req.inputs.kind = protocol_from_string(config.value("protocol", std::string("sync-teledata")));
        if (config.contains("psi")) {
            req.inputs.psi = qubit_from_json(config.at("psi"));
        }
        if (config.contains("phi")) {
            req.inputs.phi = qubit_from_json(config.at("phi"));
        }
        if (config.contains("u")) {
            req.inputs.u = Operator::single("u", matrix2_from_json(config.at("u")));
        }
        if (config.contains("z_correction")) {
            req.inputs.z_correction = z_correction_from_string(config.at("z_correction").get<std::string>());
        }
        if (config.contains("x_correction")) {
            req.inputs.x_correction = x_correction_from_string(config.at("x_correction").get<std::string>());
        }
        if (config.contains("outcomes")) {
            req.outcomes = config.at("outcomes").get<std::vector<int>>();
        }
        if (config.contains("seed")) {
            req.seed = config.at("seed").get<std::uint64_t>();
        }
        return req;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    }
}

nlohmann::json simulate(const SimulateRequest &request) {
    const ProtocolInputs &inputs = request.inputs;
    nlohmann::json report = {{"requested_protocol", to_string(inputs.kind)}, {"fallback", nullptr}};

    std::optional<ProtocolCircuit> built;
    try {
        built.emplace(build_protocol(inputs));
        report["protocol"] = to_string(inputs.kind);
    } catch (const Error &e) {
        bool async = inputs.kind == ProtocolKind::async_teledata || inputs.kind == ProtocolKind::async_telegate;
        if (e.kind() != ErrorKind::DegenerateAmplitude || !async) {
            throw;
        }
        built.emplace(synchronous_fallback(inputs));
        ProtocolKind sync = inputs.kind == ProtocolKind::async_teledata ? ProtocolKind::sync_teledata
                                                                        : ProtocolKind::sync_telegate;
        report["protocol"] = to_string(sync);
        report["fallback"] = {{"reason", e.what()}, {"protocol", to_string(sync)}};
    }

    std::optional<RunResult> run;
    if (request.outcomes) {
        run.emplace(run_circuit(built->circuit, *request.outcomes));
    } else {
        if (!request.seed) {
            throw Error(ErrorKind::InvalidConfig, "random measurement needs a seed");
        }
        std::mt19937_64 rng(*request.seed);
        run.emplace(run_circuit(built->circuit, rng));
    }

    StateVector final_state = extract_subsystem(run->state, built->output_qubits);
    StateVector oracle = oracle_for(inputs);
    nlohmann::json roles = nlohmann::json::array();
    for (std::size_t q : built->output_qubits) {
        roles.push_back(to_string(built->layout.roles[q]));
    }
    report["outcomes"] = run->outcomes;
    report["output_qubits"] = roles;
    report["final_state"] = to_json(final_state);
    report["oracle_fidelity"] = fidelity_up_to_phase(final_state, oracle);
    report["norm_log"] = run->state.norm_log();
    report["circuit"] = to_json(built->circuit);
    return report;
}

std::vector<Scenario> scenarios_from_json(const nlohmann::json &config) {
    const nlohmann::json *list = &config;
    nlohmann::json wrapped;
    if (config.is_object()) {
        if (config.contains("scenarios")) {
            list = &config.at("scenarios");
        } else {
            wrapped = nlohmann::json::array({config});
            list = &wrapped;
        }
    }
    if (!list->is_array()) {
        throw Error(ErrorKind::InvalidConfig, "scenarios must be a list");
    }
    std::vector<Scenario> out;
    try {
        for (std::size_t i = 0; i < list->size(); ++i) {
            const auto &s = (*list)[i];
            if (!s.is_object()) {
                throw Error(ErrorKind::InvalidConfig, "scenario " + std::to_string(i) + " is not an object");
            }
            Scenario sc;
            sc.id = s.contains("id") ? (s.at("id").is_string() ? s.at("id").get<std::string>() : s.at("id").dump())
                                     : std::to_string(i);
            sc.protocol = s.at("protocol").get<std::string>();
            ProtocolKind kind = protocol_from_string(sc.protocol);
            sc.family = (kind == ProtocolKind::sync_teledata || kind == ProtocolKind::async_teledata)
                            ? timeline::Family::teledata
                            : timeline::Family::telegate;
            auto k = s.at("k").get<std::int64_t>();
            if (k < 0) {
                throw Error(ErrorKind::InvalidConfig, "k must be non-negative");
            }
            sc.k = static_cast<std::size_t>(k);
            sc.model.t_epr = s.value("t_epr", timeline::Nanos{0});
            sc.model.t_cl = s.value("t_cl", timeline::Nanos{0});
            sc.model.t_gate = s.value("t_gate", timeline::Nanos{0});
            sc.model.t_meas = s.value("t_meas", timeline::Nanos{0});
            if (s.contains("t_coh") && !s.at("t_coh").is_null()) {
                sc.model.t_coh = s.at("t_coh").get<timeline::Nanos>();
            }
            sc.model.validate();
            out.push_back(std::move(sc));
        }
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::UnknownProtocol) {
            throw Error(ErrorKind::InvalidConfig, e.what());
        }
        throw;
    }
    return out;
}

std::string timeline_csv(const std::vector<Scenario> &scenarios) {
    std::ostringstream csv;
    csv << "scenario,protocol,k,makespan_sync,makespan_async,hidden_latency,expected_makespan_sync,"
           "expected_makespan_async,expected_hidden_latency,violations_sync,violations_async\n";
    csv << std::fixed << std::setprecision(2);
    for (const auto &sc : scenarios) {
        auto s = timeline::summarize(sc.family, sc.k, sc.model);
        csv << sc.id << ',' << sc.protocol << ',' << sc.k << ',' << s.makespan_sync << ',' << s.makespan_async << ','
            << s.hidden_latency << ',' << s.expected_makespan_sync << ',' << s.expected_makespan_async << ','
            << s.expected_hidden_latency << ',' << s.violations_sync << ',' << s.violations_async << '\n';
    }
    return csv.str();
}

nlohmann::json timeline_json(const std::vector<Scenario> &scenarios) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto &sc : scenarios) {
        auto sync = timeline::schedule(sc.family, timeline::Variant::sync, sc.k, sc.model);
        auto async = timeline::schedule(sc.family, timeline::Variant::async, sc.k, sc.model);
        list.push_back({{"scenario", sc.id},
                        {"protocol", sc.protocol},
                        {"k", sc.k},
                        {"sync", timeline::to_json(sync)},
                        {"async", timeline::to_json(async)}});
    }
    return {{"scenarios", std::move(list)}};
}

namespace {

struct Options {
    std::string protocol;
    std::size_t trials = 1000;
    std::optional<std::uint64_t> seed;
    double threshold = kDefaultFidelityThreshold;
    std::string config;
    std::string out;
    std::string timeline_json_path;
    std::string z_correction = "conjugated";
    std::string x_correction = "conjugated";
    bool summary = false;
};

void emit(const Options &opt, const std::string &text, std::ostream &out) {
    if (!opt.out.empty()) {
        write_text(opt.out, text);
    } else if (!opt.summary) {
        out << text;
    }
}

int cmd_simulate(const Options &opt, std::ostream &out) {
    nlohmann::json config = opt.config.empty() ? nlohmann::json::object() : read_json_file(opt.config);
    if (!opt.protocol.empty()) {
        config["protocol"] = opt.protocol;
    }
    SimulateRequest req = simulate_request_from_json(config);
    if (opt.seed) {
        req.seed = opt.seed;
    }
    if (!req.outcomes && !req.seed) {
        throw Error(ErrorKind::InvalidConfig, "simulate needs forced outcomes or --seed");
    }
    nlohmann::json report = simulate(req);
    double fidelity = report.at("oracle_fidelity").get<double>();
    emit(opt, dump(report), out);
    if (opt.summary) {
        out << "protocol        " << report.at("protocol").get<std::string>() << "\n";
        if (!report.at("fallback").is_null()) {
            out << "fallback        " << report.at("fallback").at("reason").get<std::string>() << "\n";
        }
        out << "outcomes        " << report.at("outcomes").dump() << "\n";
        out << "oracle fidelity " << std::setprecision(17) << fidelity << "\n";
    }
    return fidelity >= opt.threshold ? kSuccess : kCheckFailed;
}

std::string format_fidelity(std::optional<double> f) {
    if (!f) {
        return "-";
    }
    std::ostringstream s;
    s << std::setprecision(17) << *f;
    return s.str();
}

int cmd_verify(const Options &opt, std::ostream &out) {
    if (opt.protocol.empty()) {
        throw Error(ErrorKind::InvalidConfig, "verify needs --protocol");
    }
    if (!opt.seed) {
        throw Error(ErrorKind::InvalidConfig, "verify needs --seed");
    }
    ProtocolKind kind = protocol_from_string(opt.protocol);
    SuiteOptions suite;
    suite.z_correction = z_correction_from_string(opt.z_correction);
    suite.x_correction = x_correction_from_string(opt.x_correction);
    VerificationReport randomized = randomized_suite(opt.protocol, opt.trials, *opt.seed, opt.threshold, suite);

    // A fixed nondegenerate instance, independent of the seed.
    ProtocolInputs canonical;
    canonical.kind = kind;
    canonical.psi = {std::sqrt(1.0 / 3.0), std::sqrt(2.0 / 3.0)};
    canonical.phi = {1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0))};
    canonical.u = gates::hadamard();
    canonical.z_correction = suite.z_correction;
    canonical.x_correction = suite.x_correction;
    VerificationReport exhaustive = exhaustive_outcome_suite(canonical, opt.threshold);

    bool passed = randomized.passed() && exhaustive.passed();
    nlohmann::json report = {{"protocol", to_string(kind)},
                             {"passed", passed},
                             {"randomized", to_json(randomized)},
                             {"exhaustive", to_json(exhaustive)}};
    emit(opt, dump(report), out);
    if (opt.summary) {
        auto line = [&](const char *name, const VerificationReport &r) {
            out << std::left << std::setw(12) << name << std::setw(16) << r.protocol << std::setw(8) << r.trials
                << std::setw(26) << format_fidelity(r.min_fidelity) << std::setw(10)
                << r.failures.size() << (r.passed() ? "pass" : "FAIL") << "\n";
        };
        out << std::left << std::setw(12) << "suite" << std::setw(16) << "protocol" << std::setw(8) << "trials"
            << std::setw(26) << "min_fidelity" << std::setw(10) << "failures"
            << "status\n";
        line("randomized", randomized);
        line("exhaustive", exhaustive);
    }
    return passed ? kSuccess : kCheckFailed;
}

int cmd_timeline(const Options &opt, std::ostream &out) {
    if (opt.config.empty()) {
        throw Error(ErrorKind::InvalidConfig, "timeline needs --config");
    }
    auto scenarios = scenarios_from_json(read_json_file(opt.config));
    emit(opt, timeline_csv(scenarios), out);
    if (!opt.timeline_json_path.empty()) {
        write_text(opt.timeline_json_path, dump(timeline_json(scenarios)));
    }
    if (opt.summary) {
        out << std::left << std::setw(12) << "scenario" << std::setw(16) << "protocol" << std::setw(6) << "k"
            << std::setw(14) << "sync" << std::setw(14) << "async"
            << "hidden\n";
        for (const auto &sc : scenarios) {
            auto s = timeline::summarize(sc.family, sc.k, sc.model);
            out << std::left << std::setw(12) << sc.id << std::setw(16) << sc.protocol << std::setw(6) << sc.k
                << std::setw(14) << s.makespan_sync << std::setw(14) << s.makespan_async << s.hidden_latency << "\n";
        }
    }
    return kSuccess;
}

int cmd_qnc(const Options &opt, std::ostream &out) {
    nlohmann::json config = opt.config.empty() ? nlohmann::json::object() : read_json_file(opt.config);
    if (!config.is_object()) {
        throw Error(ErrorKind::InvalidConfig, "qnc config must be a JSON object");
    }
    std::optional<qnc::CardLayout> layout;
    std::vector<qnc::Request> requests;
    std::vector<std::pair<std::size_t, std::size_t>> routes;
    qnc::AllocationPolicy policy;
    try {
        if (config.contains("layout")) {
            layout.emplace(qnc::layout_from_json(config.at("layout")));
        } else {
            layout.emplace(qnc::CardLayout::default_layout(config.value("t_gate", timeline::Nanos{1})));
        }
        for (const auto &r : config.value("requests", nlohmann::json::array())) {
            const auto &id = r.at("photon");
            requests.push_back({id.is_string() ? id.get<std::string>() : id.dump(), r.at("hold").get<timeline::Nanos>()});
        }
        for (const auto &r : config.value("routes", nlohmann::json::array())) {
            routes.emplace_back(r.at(0).get<std::size_t>(), r.at(1).get<std::size_t>());
        }
        if (config.contains("policy")) {
            policy.allow_swaps = config.at("policy").value("allow_swaps", true);
        }
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    }

    nlohmann::json report = {{"layout", qnc::to_json(*layout)}};
    int code = kSuccess;
    nlohmann::json route_list = nlohmann::json::array();
    for (auto [from, to] : routes) {
        try {
            auto r = qnc::swap_route(*layout, from, to);
            route_list.push_back({{"from", from}, {"to", to}, {"path", r.path}, {"cost", r.cost}});
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::NoRoute) {
                throw;
            }
            route_list.push_back({{"from", from}, {"to", to}, {"error", e.what()}});
            code = kCheckFailed;
        }
    }
    report["routes"] = std::move(route_list);
    try {
        report["placement"] = qnc::to_json(qnc::plan_allocation(*layout, requests, policy));
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::CardFull) {
            throw;
        }
        report["placement"] = {{"error", e.what()}};
        code = kCheckFailed;
    }
    emit(opt, dump(report), out);
    if (opt.summary) {
        if (report.at("placement").contains("assignment")) {
            for (const auto &a : report.at("placement").at("assignment")) {
                out << "photon " << a.at("photon").get<std::string>() << " -> qubit " << a.at("qubit") << "\n";
            }
            out << "swaps  " << report.at("placement").at("swaps").size() << "\n";
        } else {
            out << report.at("placement").at("error").get<std::string>() << "\n";
        }
    }
    return code;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulate and verify synchronous/asynchronous telegate and teledata protocols", "dqc"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", opt.config, "JSON config file");
        sub->add_option("--out", opt.out, "Write the report here instead of stdout");
        sub->add_flag("--summary", opt.summary, "Print a human-readable summary");
    };

    auto *simulate_cmd = app.add_subcommand("simulate", "Run one protocol instance");
    add_common(simulate_cmd);
    simulate_cmd->add_option("--protocol", opt.protocol, "Protocol (overrides the config)");
    simulate_cmd->add_option("--seed", opt.seed, "Seed for sampled measurements");
    simulate_cmd->add_option("--threshold", opt.threshold, "Minimum oracle fidelity");

    auto *verify_cmd = app.add_subcommand("verify", "Randomized + exhaustive equivalence suite");
    add_common(verify_cmd);
    verify_cmd->add_option("--protocol", opt.protocol, "sync-teledata | sync-telegate | async-teledata | async-telegate");
    verify_cmd->add_option("--trials", opt.trials, "Random instances")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", opt.seed, "Seed");
    verify_cmd->add_option("--threshold", opt.threshold, "Minimum fidelity");
    verify_cmd->add_option("--z-correction", opt.z_correction, "conjugated | g_operator");
    verify_cmd->add_option("--x-correction", opt.x_correction, "conjugated | f_parity | literal_f");

    auto *timeline_cmd = app.add_subcommand("timeline", "Sync vs async makespans for latency scenarios");
    add_common(timeline_cmd);
    timeline_cmd->add_option("--timeline-json", opt.timeline_json_path, "Also write the event timelines as JSON");

    auto *qnc_cmd = app.add_subcommand("qnc", "Plan SWAP routes and photon placement on a network card");
    add_common(qnc_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::CallForAllHelp &e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        if (simulate_cmd->parsed()) {
            return cmd_simulate(opt, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(opt, out);
        }
        if (timeline_cmd->parsed()) {
            return cmd_timeline(opt, out);
        }
        return cmd_qnc(opt, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        // Simulation-time failures are check failures; everything else is bad input.
        switch (e.kind()) {
            case ErrorKind::ImpossibleOutcome:
            case ErrorKind::AnnihilatedState:
            case ErrorKind::NotProductState:
                return kCheckFailed;
            default:
                return kUsageError;
        }
    }
}

}  // namespace dqc::cli
