#include "fsmlock/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "fsmlock/error.hpp"
#include "fsmlock/hdl.hpp"
#include "fsmlock/kiss2.hpp"
#include "fsmlock/obfuscate.hpp"
#include "fsmlock/params.hpp"
#include "fsmlock/protocol.hpp"
#include "fsmlock/puf.hpp"
#include "fsmlock/simulate.hpp"

namespace fsmlock {

namespace {

/// A security or equivalence property that failed to hold.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

/// Human-readable lines, then `---`, then key=value lines.
class Report {
public:
    explicit Report(std::ostream &out) : out_(out) {}

    void line(const std::string &text) { lines_.push_back(text); }
    template <typename T>
    void kv(const std::string &key, const T &value)
    {
        std::ostringstream s;
        s << value;
        kvs_.emplace_back(key, s.str());
    }

    void flush()
    {
        for (const auto &l : lines_) {
            out_ << l << '\n';
        }
        out_ << "---\n";
        for (const auto &[k, v] : kvs_) {
            out_ << k << '=' << v << '\n';
        }
    }

private:
    std::ostream &out_;
    std::vector<std::string> lines_;
    std::vector<std::pair<std::string, std::string>> kvs_;
};

constexpr const char *kDemoIp = R"(.i 1
.o 1
.s 7
.r S0
0 S0 S0 0
1 S0 S1 0
0 S1 S2 0
1 S1 S1 1
0 S2 S3 1
1 S2 S0 0
0 S3 S4 0
1 S3 S5 1
- S4 S6 1
0 S5 S0 1
1 S5 S3 0
0 S6 S6 0
1 S6 S2 1
.e
)";

LayeredParams parse_layered(const std::string &spec)
{
    LayeredParams lp;
    bool have_m = false;
    bool have_big_m = false;
    std::string item;
    std::istringstream in(spec);
    while (std::getline(in, item, ',')) {
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw UsageError("layered spec must look like m=4,M=6");
        }
        std::string key = item.substr(0, eq);
        unsigned value = 0;
        try {
            value = static_cast<unsigned>(std::stoul(item.substr(eq + 1)));
        } catch (const std::exception &) {
            throw UsageError("bad number in layered spec '" + item + "'");
        }
        if (key == "m") {
            lp.branch_count = value;
            have_m = true;
        } else if (key == "M") {
            lp.layer_count = value;
            have_big_m = true;
        } else {
            throw UsageError("unknown layered key '" + key + "'");
        }
    }
    if (!have_m || !have_big_m) {
        throw UsageError("layered spec needs both m and M");
    }
    states_added_layered(lp.branch_count, lp.layer_count); // throws InfeasibleParams
    return lp;
}

std::string read_text(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw IoError("cannot write '" + path + "'");
    }
}

/// A literal 0/1 string, or the path of a file holding one.
BitString bits_arg(const std::string &arg)
{
    if (!arg.empty() && arg.find_first_not_of("01") == std::string::npos) {
        return BitString::parse(arg);
    }
    std::string text = read_text(arg);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
        text.pop_back();
    }
    return BitString::parse(text);
}

std::string outcome_text(const UnlockOutcome &o)
{
    if (const auto *u = std::get_if<Unlocked>(&o)) {
        return "unlocked after " + std::to_string(u->steps_taken) + " steps";
    }
    const auto &t = std::get<Trapped>(o);
    return "trapped at step " + std::to_string(t.step_index) + " (state " + t.state + ")";
}

std::string rational_text(const Rational &r)
{
    std::ostringstream s;
    s << numerator(r) << '/' << denominator(r);
    return s.str();
}

std::size_t count_added_transitions(const BoostedFsm &locked, const Fsm &original)
{
    return locked.fsm.transitions().size() - original.transitions().size();
}

void report_params(Report &r, unsigned license_bits)
{
    LockParams p = optimize(license_bits);
    r.line("license length L = " + std::to_string(p.license_bits));
    std::ostringstream widths;
    for (unsigned b : feasible_selector_widths(license_bits)) {
        widths << (widths.tellp() > 0 ? " " : "") << b << ":" << states_added(license_bits, b);
    }
    r.line("feasible b (b:SN) = " + widths.str());
    r.line("optimal b = " + std::to_string(p.selector_bits) + ", n = " + std::to_string(p.dummy_states) +
           ", h = " + std::to_string(p.black_holes) + ", SN = " + std::to_string(p.added_states));
    std::ostringstream cont;
    cont.precision(6);
    cont << std::fixed << continuous_optimum_b(license_bits);
    r.line("continuous optimum b* = " + cont.str() + " (reporting only)");
    r.kv("L", p.license_bits);
    r.kv("b", p.selector_bits);
    r.kv("n", p.dummy_states);
    r.kv("h", p.black_holes);
    r.kv("SN", p.added_states);
    r.kv("b_star", cont.str());
}

void report_layered(Report &r, const LayeredParams &lp)
{
    std::uint64_t count = states_added_layered(lp.branch_count, lp.layer_count);
    r.line("layered baseline m = " + std::to_string(lp.branch_count) + ", M = " + std::to_string(lp.layer_count) +
           ": added states = " + std::to_string(count));
    if (lp.branch_count == 3 && lp.layer_count == 178) {
        r.line("note: the layered baseline is cited with " + std::to_string(kCitedLayeredStatesAt128) +
               " added states at m=3, M=178; the layer formula (M/2)(1+m) gives " + std::to_string(count));
        r.kv("layered_cited_states", kCitedLayeredStatesAt128);
    }
    r.kv("layered_m", lp.branch_count);
    r.kv("layered_M", lp.layer_count);
    r.kv("layered_states", count);
}

int cmd_params(unsigned license_bits, const std::string &layered, std::ostream &out)
{
    Report r(out);
    report_params(r, license_bits);
    if (!layered.empty()) {
        report_layered(r, parse_layered(layered));
    }
    r.flush();
    return kExitOk;
}

struct LockOptions {
    std::string input;
    std::string output;
    std::string license_out;
    std::string hdl_out;
    std::string module_name = "locked_fsm";
    std::optional<unsigned> license_bits;
    std::string license;
    std::string response;
    std::uint64_t device_seed = 123;
    std::uint64_t challenge = 1;
    std::string layered;
    std::vector<std::string> scheme;
    std::uint64_t seed = 1;
};

int cmd_lock(const LockOptions &o, std::ostream &out)
{
    Fsm original = read_kiss2_file(o.input);
    std::optional<LayeredParams> lp;
    std::string shape = o.layered;
    if (!o.scheme.empty()) {
        // --scheme layered m=4 M=6  (or m=4,M=6)
        const std::string &kind = o.scheme.front();
        if (kind == "layered") {
            for (std::size_t i = 1; i < o.scheme.size(); ++i) {
                shape += (shape.empty() ? "" : ",") + o.scheme[i];
            }
            if (shape.empty()) {
                throw UsageError("--scheme layered needs m=.. and M=..");
            }
        } else if (kind != "proposed" || o.scheme.size() > 1 || !shape.empty()) {
            throw UsageError("--scheme takes 'proposed' or 'layered m=<m> M=<M>'");
        }
    }
    if (!shape.empty()) {
        lp = parse_layered(shape);
    }

    std::size_t license_width = 0;
    std::size_t response_width = 0;
    std::optional<BitString> license;
    if (!o.license.empty()) {
        license = bits_arg(o.license);
    }
    if (lp) {
        unsigned k = layered_selector_bits(lp->branch_count);
        response_width = std::size_t{lp->layer_count} * k;
        license_width = std::size_t{lp->layer_count / 2} * k;
        if (o.license_bits && *o.license_bits != license_width) {
            throw InfeasibleParams("layered m=" + std::to_string(lp->branch_count) + ", M=" +
                                   std::to_string(lp->layer_count) + " uses a " + std::to_string(license_width) +
                                   "-bit license, not " + std::to_string(*o.license_bits));
        }
    } else {
        if (o.license_bits) {
            license_width = *o.license_bits;
        } else if (license) {
            license_width = license->width();
        } else {
            throw UsageError("lock needs -L or --license");
        }
        if (license_width == 0) {
            throw InfeasibleParams("license length must be at least 1 bit");
        }
        response_width = license_width;
    }
    if (!license) {
        license = random_license(o.seed, license_width);
    }
    if (license->width() != license_width) {
        throw InfeasibleParams("license has " + std::to_string(license->width()) + " bits, expected " +
                               std::to_string(license_width));
    }
    BitString response = o.response.empty() ? respond(MockPuf{o.device_seed}, o.challenge, response_width)
                                            : bits_arg(o.response);

    BoostedFsm locked = lp ? build_layered(original, response, *license, *lp)
                           : build_bfsm(original, response, *license, mix64(o.seed));
    write_text(o.output, emit_kiss2(locked.fsm));
    const std::string license_path = o.license_out.empty() ? o.output + ".license" : o.license_out;
    write_text(license_path, license->str() + "\n");
    if (!o.hdl_out.empty()) {
        write_text(o.hdl_out, emit_hdl(locked.fsm, o.module_name));
    }

    const std::size_t added = locked.fsm.states().size() - original.states().size();
    Report r(out);
    r.line("locked " + o.input + " -> " + o.output + " (" + (lp ? "layered" : "proposed") + " scheme)");
    r.line("original states " + std::to_string(original.states().size()) + ", added states " +
           std::to_string(added) + ", added transitions " + std::to_string(count_added_transitions(locked, original)));
    r.line("license written to " + license_path);
    r.kv("scheme", lp ? "layered" : "proposed");
    r.kv("L", license_width);
    r.kv("b", locked.selector_bits);
    if (locked.params) {
        r.kv("n", locked.params->dummy_states);
        r.kv("h", locked.params->black_holes);
    } else {
        r.kv("m", lp->branch_count);
        r.kv("M", lp->layer_count);
    }
    r.kv("original_states", original.states().size());
    r.kv("added_states", added);
    r.kv("added_transitions", count_added_transitions(locked, original));
    r.kv("license", license->str());
    r.kv("response_width", response_width);
    r.flush();
    return kExitOk;
}

int cmd_count_valid(const std::string &locked_path, const std::string &license_arg, const std::string &response_arg,
                    const std::string &target, const SweepOptions &sweep, std::ostream &out)
{
    BoostedFsm locked = infer_boosted(read_kiss2_file(locked_path));
    EnumerationReport rep;
    if (target == "responses") {
        if (license_arg.empty()) {
            throw UsageError("--sweep responses needs --license");
        }
        rep = count_valid_responses(locked, bits_arg(license_arg), sweep);
    } else {
        if (response_arg.empty()) {
            throw UsageError("--sweep licenses needs --response");
        }
        rep = count_valid_licenses(locked, bits_arg(response_arg), sweep);
    }

    Report r(out);
    r.line("sweep over " + target + ": " + std::to_string(rep.valid_count) + " / " + std::to_string(rep.space_size));
    for (const BitString &ex : rep.valid_examples) {
        r.line("  valid: " + ex.str());
    }
    r.kv("scheme", locked.scheme == SchemeKind::proposed ? "proposed" : "layered");
    r.kv("sweep", target);
    r.kv("valid_count", rep.valid_count);
    r.kv("space_size", rep.space_size);
    if (target == "responses") {
        Rational unauthorized = rep.valid_count == 0 ? Rational(0) : Rational(rep.valid_count - 1, rep.space_size);
        r.line("unauthorized unlock probability (count - 1) / 2^R = " + rational_text(unauthorized));
        r.kv("unauthorized_probability", rational_text(unauthorized));
        if (locked.layered) {
            const LayeredParams &lp = *locked.layered;
            Rational closed = unlock_probability_layered(lp.branch_count, lp.layer_count);
            r.line("closed form (m^(M/2) - 1) / 2^(M*ceil(log2 m)) = " + rational_text(closed));
            if ((lp.branch_count & (lp.branch_count - 1)) != 0) {
                r.line("note: the response length M[log2 m] is read with [.] as ceiling");
            }
            r.kv("closed_form_probability", rational_text(closed));
        } else {
            r.kv("closed_form_probability", rational_text(unlock_probability_proposed()));
        }
    }
    r.flush();
    if (target == "responses" && locked.scheme == SchemeKind::proposed && rep.valid_count != 1) {
        throw VerificationFailure("proposed-scheme response sweep found " + std::to_string(rep.valid_count) +
                                  " valid responses, expected exactly 1");
    }
    return kExitOk;
}

int cmd_verify(const std::string &original_path, const std::string &locked_path, const std::string &license_arg,
               const std::string &response_arg, std::size_t trials, std::size_t length, std::uint64_t seed,
               std::ostream &out)
{
    Fsm original = read_kiss2_file(original_path);
    BoostedFsm locked = infer_boosted(read_kiss2_file(locked_path));
    BitString license = bits_arg(license_arg);
    BitString response = bits_arg(response_arg);

    UnlockOutcome outcome = run_unlock(locked, response, license);
    if (!is_unlocked(outcome)) {
        throw VerificationFailure(outcome_text(outcome));
    }
    std::mt19937_64 rng(seed);
    std::size_t passed = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<BitString> inputs;
        for (std::size_t i = 0; i < length; ++i) {
            BitString v(original.inputs_width());
            for (std::size_t k = 0; k < v.width(); ++k) {
                v.set(k, rng() & 1U);
            }
            inputs.push_back(std::move(v));
        }
        if (trace_equivalence(original, locked, response, license, inputs) != TraceVerdict::equivalent) {
            throw VerificationFailure("trace mismatch in trial " + std::to_string(t));
        }
        ++passed;
    }
    Report r(out);
    r.line(outcome_text(outcome));
    r.line(std::to_string(passed) + " / " + std::to_string(trials) + " random traces match the original");
    r.kv("unlocked", 1);
    r.kv("trials", trials);
    r.kv("matched", passed);
    r.flush();
    return kExitOk;
}

int cmd_protocol_demo(unsigned license_bits, std::uint64_t device_seed, std::uint64_t wrong_seed,
                      std::uint64_t challenge, std::uint64_t seed, const std::string &ip_path, std::ostream &out)
{
    Fsm ip = ip_path.empty() ? parse_kiss2(kDemoIp) : read_kiss2_file(ip_path);
    ProtocolConfig cfg{device_seed, {challenge}, "ip-core", license_bits, seed};
    ProtocolRun run = run_protocol(cfg, ip);
    UnlockOutcome wrong = activate(run.deliverable, MockPuf{wrong_seed}, run.deliverable.challenge);
    const bool collision =
        respond(MockPuf{wrong_seed}, challenge, license_bits) == respond(MockPuf{device_seed}, challenge, license_bits);

    Report r(out);
    std::istringstream transcript(format_transcript(run.transcript));
    for (std::string line; std::getline(transcript, line);) {
        r.line(line);
    }
    r.line("authorized device: " + outcome_text(run.activation));
    r.line("device with seed " + std::to_string(wrong_seed) + ": " + outcome_text(wrong) +
           (collision ? " (identical PUF response)" : ""));
    r.kv("steps", run.transcript.size());
    r.kv("fpga_id", run.deliverable.fpga_id);
    r.kv("license", run.deliverable.license.str());
    r.kv("b", run.deliverable.selector_bits);
    r.kv("n", run.deliverable.dummy_states);
    r.kv("h", run.deliverable.black_holes);
    r.kv("authorized", is_unlocked(run.activation) ? "unlocked" : "trapped");
    r.kv("wrong_device", is_unlocked(wrong) ? "unlocked" : "trapped");
    r.flush();
    if (is_unlocked(wrong) && !collision) {
        throw VerificationFailure("a device with a different PUF response unlocked the IP");
    }
    return kExitOk;
}

int cmd_compare(const std::vector<std::string> &benchmarks, const std::vector<unsigned> &lengths, std::uint64_t seed,
                std::ostream &out)
{
    Report r(out);
    bool ok = true;
    r.line("benchmark L scheme added_states added_transitions");
    for (const std::string &path : benchmarks) {
        Fsm original = read_kiss2_file(path);
        std::string name = std::filesystem::path(path).stem().string();
        for (unsigned L : lengths) {
            if (L % 2 != 0) {
                throw InfeasibleParams("the m=4 layered baseline needs an even license length, got " +
                                       std::to_string(L));
            }
            BitString license = random_license(seed, L);
            BoostedFsm proposed =
                build_bfsm(original, respond(MockPuf{seed}, 1, L), license, mix64(seed));
            LayeredParams lp{4, L};
            BoostedFsm layered = build_layered(original, respond(MockPuf{seed}, 1, std::size_t{L} * 2), license, lp);
            std::size_t ps = proposed.fsm.states().size() - original.states().size();
            std::size_t ls = layered.fsm.states().size() - original.states().size();
            std::size_t pt = count_added_transitions(proposed, original);
            std::size_t lt = count_added_transitions(layered, original);
            r.line(name + " " + std::to_string(L) + " proposed " + std::to_string(ps) + " " + std::to_string(pt));
            r.line(name + " " + std::to_string(L) + " layered " + std::to_string(ls) + " " + std::to_string(lt));
            std::string key = name + ".L" + std::to_string(L);
            r.kv(key + ".proposed_states", ps);
            r.kv(key + ".proposed_transitions", pt);
            r.kv(key + ".layered_states", ls);
            r.kv(key + ".layered_transitions", lt);
            ok = ok && ps < ls;
        }
    }
    const std::uint64_t proposed128 = optimize(128).added_states;
    const std::uint64_t layered128 = states_added_layered(3, 178);
    Rational ratio(proposed128, layered128);
    Rational cited(proposed128, kCitedLayeredStatesAt128);
    r.line("L=128: proposed " + std::to_string(proposed128) + " vs layered " + std::to_string(layered128) +
           " (cited " + std::to_string(kCitedLayeredStatesAt128) + ") added states; ratio " + rational_text(ratio));
    r.kv("L128.proposed_states", proposed128);
    r.kv("L128.layered_states", layered128);
    r.kv("L128.layered_cited_states", kCitedLayeredStatesAt128);
    r.kv("L128.ratio", rational_text(ratio));
    r.kv("L128.quarter", ratio <= Rational(1, 4) && cited <= Rational(1, 4) ? 1 : 0);
    r.flush();
    ok = ok && ratio <= Rational(1, 4) && cited <= Rational(1, 4);
    if (!ok) {
        throw VerificationFailure("proposed scheme did not add fewer states than the layered baseline");
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Lock FSM IP cores to PUF-bearing devices and check the lock's security properties", "fsmlock"};
    app.require_subcommand(1);

    int status = kExitOk;

    unsigned params_L = 0;
    std::string params_layered;
    auto *params = app.add_subcommand("params", "Optimal dummy-FSM sizing for a license length");
    params->add_option("-L,--license-bits", params_L, "License length in bits")->required()->check(CLI::PositiveNumber);
    params->add_option("--layered", params_layered, "Layered baseline shape, e.g. m=4,M=6");
    params->callback([&] { status = cmd_params(params_L, params_layered, out); });

    LockOptions lock_opts;
    auto *lock = app.add_subcommand("lock", "Insert a dummy FSM in front of a KISS2 machine");
    lock->add_option("input", lock_opts.input, "Original KISS2 file")->required();
    lock->add_option("-o,--output", lock_opts.output, "Locked KISS2 output")->required();
    lock->add_option("-L,--license-bits", lock_opts.license_bits, "License length in bits");
    lock->add_option("--license", lock_opts.license, "License bits (MSB first) or file");
    lock->add_option("--response", lock_opts.response, "Raw PUF response bits or file");
    lock->add_option("--device-seed", lock_opts.device_seed, "Mock PUF seed when no --response is given");
    lock->add_option("--challenge", lock_opts.challenge, "Mock PUF challenge");
    lock->add_option("--layered", lock_opts.layered, "Use the layered baseline, e.g. m=4,M=6");
    lock->add_option("--scheme", lock_opts.scheme, "proposed, or layered m=<m> M=<M>")->expected(1, 3);
    lock->add_option("--seed", lock_opts.seed, "Seed for the license and black-hole wiring");
    lock->add_option("--license-out", lock_opts.license_out, "License output (default <output>.license)");
    lock->add_option("--hdl", lock_opts.hdl_out, "Also write a Verilog module");
    lock->add_option("--module-name", lock_opts.module_name, "Verilog module name");
    lock->callback([&] { status = cmd_lock(lock_opts, out); });

    std::string cv_locked, cv_license, cv_response, cv_target = "responses";
    SweepOptions cv_sweep;
    auto *count = app.add_subcommand("count-valid", "Exhaustively count unlocking responses or licenses");
    count->add_option("locked", cv_locked, "Locked KISS2 file")->required();
    count->add_option("--license", cv_license, "License bits or file");
    count->add_option("--response", cv_response, "Response bits or file");
    count->add_option("--sweep", cv_target, "responses or licenses")
        ->check(CLI::IsMember({"responses", "licenses"}));
    count->add_option("--guard", cv_sweep.guard_bits, "Largest sweep width in bits");
    count->add_option("--threads", cv_sweep.threads, "Worker threads");
    count->callback([&] { status = cmd_count_valid(cv_locked, cv_license, cv_response, cv_target, cv_sweep, out); });

    std::string v_original, v_locked, v_license, v_response;
    std::size_t v_trials = 1000, v_length = 32;
    std::uint64_t v_seed = 1;
    auto *verify = app.add_subcommand("verify", "Unlock, then compare traces with the original");
    verify->add_option("original", v_original, "Original KISS2 file")->required();
    verify->add_option("locked", v_locked, "Locked KISS2 file")->required();
    verify->add_option("--license", v_license, "License bits or file")->required();
    verify->add_option("--response", v_response, "Response bits or file")->required();
    verify->add_option("--trials", v_trials, "Random input sequences");
    verify->add_option("--length", v_length, "Vectors per sequence");
    verify->add_option("--seed", v_seed, "Input generator seed");
    verify->callback(
        [&] { status = cmd_verify(v_original, v_locked, v_license, v_response, v_trials, v_length, v_seed, out); });

    unsigned d_L = 6;
    std::uint64_t d_device = 123, d_wrong = 124, d_challenge = 1, d_seed = 1;
    std::string d_ip;
    auto *demo = app.add_subcommand("protocol-demo", "Run the three-party licensing exchange");
    demo->add_option("-L,--license-bits", d_L, "License length in bits")->check(CLI::PositiveNumber);
    demo->add_option("--device-seed", d_device, "Seed of the purchased device");
    demo->add_option("--wrong-seed", d_wrong, "Seed of an unlicensed device");
    demo->add_option("--challenge", d_challenge, "Challenge enrolled for the order");
    demo->add_option("--seed", d_seed, "License and wiring seed");
    demo->add_option("--ip", d_ip, "KISS2 file of the IP core (default: built-in 7-state machine)");
    demo->callback([&] { status = cmd_protocol_demo(d_L, d_device, d_wrong, d_challenge, d_seed, d_ip, out); });

    std::vector<std::string> c_files;
    std::vector<unsigned> c_lengths{4, 6};
    std::uint64_t c_seed = 1;
    auto *compare = app.add_subcommand("compare", "Added states/transitions of both schemes per benchmark");
    compare->add_option("benchmarks", c_files, "KISS2 files")->required();
    compare->add_option("-L,--license-bits", c_lengths, "License lengths");
    compare->add_option("--seed", c_seed, "Seed for responses and licenses");
    compare->callback([&] { status = cmd_compare(c_files, c_lengths, c_seed, out); });

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const VerificationFailure &e) {
        err << "verification failed: " << e.what() << '\n';
        return kExitVerification;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const GuardExceeded &e) {
        err << "error: " << e.what() << " (raise --guard to override)\n";
        return kExitUsage;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const InfeasibleParams &e) {
        err << "infeasible parameters: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const WidthError &e) {
        err << "infeasible parameters: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitVerification;
    }
    return status;
}

} // namespace fsmlock
