#include "fsmlock/protocol.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fsmlock/error.hpp"
#include "fsmlock/kiss2.hpp"
#include "fsmlock/obfuscate.hpp"

namespace fsmlock {

namespace {

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

template <typename T>
T parse_number(std::string_view text, int base, const std::string &what)
{
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("bad " + what + " '" + std::string(text) + "'", 0);
    }
    return value;
}

/// key=value lines; repeated keys keep every value in order.
std::vector<std::pair<std::string, std::string>> parse_fields(std::istream &in)
{
    std::vector<std::pair<std::string, std::string>> fields;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ParseError("expected key=value", line_no, 1);
        }
        fields.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return fields;
}

const std::string &field(const std::vector<std::pair<std::string, std::string>> &fields, const std::string &key)
{
    for (const auto &[k, v] : fields) {
        if (k == key) {
            return v;
        }
    }
    throw ParseError("missing field '" + key + "'", 0);
}

std::string slurp(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw IoError("cannot write '" + path.string() + "'");
    }
}

std::string meta_text(const Deliverable &d)
{
    std::ostringstream meta;
    meta << "ip_id=" << d.ip_id << '\n'
         << "fpga_id=" << d.fpga_id << '\n'
         << "challenge_hex=" << hex64(d.challenge) << '\n'
         << "scheme=" << d.scheme << '\n'
         << "b=" << d.selector_bits << '\n'
         << "n=" << d.dummy_states << '\n'
         << "h=" << d.black_holes << '\n';
    return meta.str();
}

void apply_meta(Deliverable &d, const std::vector<std::pair<std::string, std::string>> &fields)
{
    d.ip_id = field(fields, "ip_id");
    d.fpga_id = field(fields, "fpga_id");
    d.challenge = parse_number<std::uint64_t>(field(fields, "challenge_hex"), 16, "challenge");
    d.scheme = field(fields, "scheme");
    d.selector_bits = parse_number<unsigned>(field(fields, "b"), 10, "b");
    d.dummy_states = parse_number<unsigned>(field(fields, "n"), 10, "n");
    d.black_holes = parse_number<std::uint64_t>(field(fields, "h"), 10, "h");
}

} // namespace

void save_deliverable(const Deliverable &d, const std::string &dir)
{
    std::filesystem::path root(dir);
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec) {
        throw IoError("cannot create '" + dir + "': " + ec.message());
    }
    write_file(root / "locked.kiss2", d.locked_kiss2);
    write_file(root / "license.txt", d.license.str() + "\n");
    write_file(root / "meta.txt", meta_text(d));
}

Deliverable load_deliverable(const std::string &dir)
{
    std::filesystem::path root(dir);
    Deliverable d;
    d.locked_kiss2 = slurp(root / "locked.kiss2");
    std::string license = slurp(root / "license.txt");
    while (!license.empty() && (license.back() == '\n' || license.back() == '\r')) {
        license.pop_back();
    }
    d.license = BitString::parse(license);
    std::istringstream meta(slurp(root / "meta.txt"));
    apply_meta(d, parse_fields(meta));
    return d;
}

int message_step(const ProtocolMessage &msg)
{
    static constexpr int steps[] = {2, 3, 4, 6};
    return steps[msg.index()];
}

std::string serialize_message(const ProtocolMessage &msg)
{
    std::ostringstream out;
    if (const auto *m = std::get_if<CrTransfer>(&msg)) {
        out << "CrTransfer\nstep=2\ndevice=" << m->device_id << '\n';
        for (const CrPair &p : m->pairs) {
            out << "pair=" << hex64(p.challenge) << ':' << p.response.str() << '\n';
        }
    } else if (const auto *m = std::get_if<DeviceSale>(&msg)) {
        out << "DeviceSale\nstep=3\ndevice=" << m->device_id << '\n';
    } else if (const auto *m = std::get_if<OrderRequest>(&msg)) {
        out << "OrderRequest\nstep=4\nfpga=" << m->fpga_id << "\nip=" << m->ip_id << '\n';
    } else {
        const auto &d = std::get<Deliverable>(msg);
        out << "Deliverable\nstep=6\n" << meta_text(d) << "license=" << d.license.str() << '\n';
        std::istringstream kiss(d.locked_kiss2);
        for (std::string line; std::getline(kiss, line);) {
            out << "kiss2=" << line << '\n';
        }
    }
    return out.str();
}

ProtocolMessage parse_message(const std::string &wire)
{
    std::istringstream in(wire);
    std::string kind;
    std::getline(in, kind);
    const auto fields = parse_fields(in);
    if (kind == "CrTransfer") {
        CrTransfer m{field(fields, "device"), {}};
        for (const auto &[k, v] : fields) {
            if (k == "pair") {
                std::size_t colon = v.find(':');
                if (colon == std::string::npos) {
                    throw ParseError("bad pair '" + v + "'", 0);
                }
                m.pairs.push_back({parse_number<std::uint64_t>(std::string_view(v).substr(0, colon), 16, "challenge"),
                                   BitString::parse(std::string_view(v).substr(colon + 1))});
            }
        }
        return m;
    }
    if (kind == "DeviceSale") {
        return DeviceSale{field(fields, "device")};
    }
    if (kind == "OrderRequest") {
        return OrderRequest{field(fields, "fpga"), field(fields, "ip")};
    }
    if (kind == "Deliverable") {
        Deliverable d;
        apply_meta(d, fields);
        d.license = BitString::parse(field(fields, "license"));
        for (const auto &[k, v] : fields) {
            if (k == "kiss2") {
                d.locked_kiss2 += v + "\n";
            }
        }
        return d;
    }
    throw ParseError("unknown message kind '" + kind + "'", 1);
}

ProtocolMessage Channel::receive()
{
    if (queue_.empty()) {
        throw Error("receive on an empty channel");
    }
    std::string wire = std::move(queue_.front());
    queue_.pop_front();
    return parse_message(wire);
}

const char *role_name(Role role)
{
    switch (role) {
    case Role::fpga_vendor:
        return "FPGA vendor";
    case Role::ip_vendor:
        return "IP vendor";
    case Role::system_designer:
        return "System designer";
    }
    return "?";
}

std::string format_transcript(const Transcript &transcript)
{
    std::ostringstream out;
    for (const TranscriptEntry &e : transcript) {
        out << "step " << e.step << ": " << role_name(e.sender);
        if (e.receiver) {
            out << " -> " << role_name(*e.receiver);
        }
        out << ": " << e.summary << '\n';
    }
    return out.str();
}

UnlockOutcome activate(const Deliverable &deliverable, const MockPuf &device, std::uint64_t challenge)
{
    BoostedFsm locked = infer_boosted(parse_kiss2(deliverable.locked_kiss2));
    BitString response = respond(device, challenge, locked.response_width());
    return run_unlock(locked, response, deliverable.license);
}

Deliverable fulfill_order(IpVendorState &vendor, const OrderRequest &order, unsigned license_bits,
                          std::uint64_t rng_seed)
{
    const LockParams params = optimize(license_bits);
    auto records = vendor.crdb.find(order.fpga_id);
    if (records == vendor.crdb.end()) {
        throw Error("order for unregistered FPGA " + order.fpga_id);
    }
    auto core = vendor.library.find(order.ip_id);
    if (core == vendor.library.end()) {
        throw Error("order for unknown IP " + order.ip_id);
    }
    const CrPair *chosen = nullptr;
    for (const CrPair &p : records->second) {
        if (p.response.width() == license_bits && !vendor.used_challenges.contains({order.fpga_id, p.challenge})) {
            chosen = &p;
            break;
        }
    }
    if (chosen == nullptr) {
        throw Error("no unused challenge left for FPGA " + order.fpga_id);
    }
    vendor.used_challenges.insert({order.fpga_id, chosen->challenge});
    BitString license = random_license(rng_seed, license_bits);
    BoostedFsm locked = build_bfsm(core->second, chosen->response, license, params, mix64(rng_seed ^ 0x5a5a5a5aULL));
    Deliverable d;
    d.locked_kiss2 = emit_kiss2(locked.fsm);
    d.license = license;
    d.ip_id = order.ip_id;
    d.fpga_id = order.fpga_id;
    d.challenge = chosen->challenge;
    d.scheme = "proposed";
    d.selector_bits = params.selector_bits;
    d.dummy_states = params.dummy_states;
    d.black_holes = params.black_holes;
    return d;
}

ProtocolRun run_protocol(const ProtocolConfig &config, const Fsm &ip)
{
    const LockParams params = optimize(config.license_bits);
    ProtocolRun run{.transcript = {},
                    .deliverable = {},
                    .activation = Trapped{},
                    .fpga_vendor = {},
                    .ip_vendor = {},
                    .designer = {}};
    Transcript &log = run.transcript;
    Channel to_ip_vendor;
    Channel to_designer;

    // 1. Manufacturing and enrollment; the IP vendor catalogs its core.
    auto [fpga_id, pairs] = enroll(config.device_seed, config.challenges, config.license_bits);
    run.fpga_vendor.device_seeds[fpga_id] = config.device_seed;
    run.fpga_vendor.challenges[fpga_id] = config.challenges;
    run.ip_vendor.library.emplace(config.ip_id, ip);
    log.push_back({1, Role::fpga_vendor, std::nullopt,
                   "manufactures FPGA " + fpga_id + " with PUF; IP vendor catalogs IP " + config.ip_id});

    // 2. C-R pairs to the IP vendor.
    to_ip_vendor.send(CrTransfer{fpga_id, pairs});
    {
        auto msg = std::get<CrTransfer>(to_ip_vendor.receive());
        log.push_back({2, Role::fpga_vendor, Role::ip_vendor,
                       "C-R pairs of FPGA " + msg.device_id + " (" + std::to_string(msg.pairs.size()) + " pairs)"});
        run.ip_vendor.crdb[msg.device_id] = std::move(msg.pairs);
    }

    // 3. Device sale; the chip itself changes hands, its seed does not.
    to_designer.send(DeviceSale{fpga_id});
    {
        auto msg = std::get<DeviceSale>(to_designer.receive());
        run.designer.device_id = msg.device_id;
        run.designer.device = MockPuf{config.device_seed};
        log.push_back({3, Role::fpga_vendor, Role::system_designer, "sells FPGA " + msg.device_id});
    }

    // 4. Order.
    to_ip_vendor.send(OrderRequest{run.designer.device_id, config.ip_id});
    auto order = std::get<OrderRequest>(to_ip_vendor.receive());
    log.push_back({4, Role::system_designer, Role::ip_vendor,
                   "orders IP " + order.ip_id + " for FPGA " + order.fpga_id});

    // 5. Lookup and locking.
    Deliverable deliverable = fulfill_order(run.ip_vendor, order, config.license_bits, config.rng_seed);
    log.push_back({5, Role::ip_vendor, std::nullopt,
                   "locks IP " + order.ip_id + " with challenge " + hex64(deliverable.challenge) + " (b=" +
                       std::to_string(params.selector_bits) + ", n=" + std::to_string(params.dummy_states) +
                       ", h=" + std::to_string(params.black_holes) + ")"});

    // 6. Locked IP and license to the designer.
    to_designer.send(deliverable);
    run.deliverable = std::get<Deliverable>(to_designer.receive());
    run.designer.received.push_back(run.deliverable);
    log.push_back({6, Role::ip_vendor, Role::system_designer,
                   "delivers locked IP " + run.deliverable.ip_id + " and " +
                       std::to_string(run.deliverable.license.width()) + "-bit license"});

    // 7. Activation on the designer's device.
    run.activation = activate(run.deliverable, run.designer.device, run.deliverable.challenge);
    if (!is_unlocked(run.activation)) {
        throw Error("activation of the delivered IP failed on the ordered device");
    }
    log.push_back({7, Role::system_designer, std::nullopt,
                   "unlocks IP " + run.deliverable.ip_id + " in " +
                       std::to_string(std::get<Unlocked>(run.activation).steps_taken) + " steps"});
    return run;
}

} // namespace fsmlock
