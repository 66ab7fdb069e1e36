#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fsmlock/bitstring.hpp"
#include "fsmlock/fsm.hpp"
#include "fsmlock/puf.hpp"
#include "fsmlock/simulate.hpp"

namespace fsmlock {

/// Locked IP plus license as sold to the system designer.
struct Deliverable {
    std::string locked_kiss2;
    BitString license;
    std::string ip_id;
    std::string fpga_id;
    std::uint64_t challenge = 0;
    std::string scheme = "proposed";
    unsigned selector_bits = 0;
    unsigned dummy_states = 0;
    std::uint64_t black_holes = 0;

    bool operator==(const Deliverable &) const = default;
};

/// Writes `locked.kiss2`, `license.txt` and `meta.txt` into `dir`.
void save_deliverable(const Deliverable &d, const std::string &dir);
Deliverable load_deliverable(const std::string &dir);

struct CrTransfer {
    std::string device_id;
    std::vector<CrPair> pairs;
};
struct DeviceSale {
    std::string device_id;
};
struct OrderRequest {
    std::string fpga_id;
    std::string ip_id;
};

using ProtocolMessage = std::variant<CrTransfer, DeviceSale, OrderRequest, Deliverable>;

/// Step number (2, 3, 4 or 6) that carries a message of this kind.
int message_step(const ProtocolMessage &msg);
std::string serialize_message(const ProtocolMessage &msg);
ProtocolMessage parse_message(const std::string &wire);

enum class Role { fpga_vendor, ip_vendor, system_designer };
const char *role_name(Role role);

struct TranscriptEntry {
    int step = 0;
    Role sender = Role::fpga_vendor;
    std::optional<Role> receiver;
    std::string summary;

    bool operator==(const TranscriptEntry &) const = default;
};

using Transcript = std::vector<TranscriptEntry>;

std::string format_transcript(const Transcript &transcript);

/// Serialized messages in flight between two parties.
class Channel {
public:
    void send(const ProtocolMessage &msg) { queue_.push_back(serialize_message(msg)); }
    ProtocolMessage receive();
    bool empty() const { return queue_.empty(); }

private:
    std::deque<std::string> queue_;
};

struct FpgaVendorState {
    std::map<std::string, std::uint64_t> device_seeds;
    std::map<std::string, std::vector<std::uint64_t>> challenges;
};

struct IpVendorState {
    std::map<std::string, Fsm> library;
    CrDatabase crdb;
    std::set<std::pair<std::string, std::uint64_t>> used_challenges;
};

struct DesignerState {
    std::string device_id;
    MockPuf device;
    std::vector<Deliverable> received;
};

struct ProtocolConfig {
    std::uint64_t device_seed = 0;
    std::vector<std::uint64_t> challenges;
    std::string ip_id;
    unsigned license_bits = 0;
    std::uint64_t rng_seed = 0;
};

struct ProtocolRun {
    Transcript transcript;
    Deliverable deliverable;
    UnlockOutcome activation;
    FpgaVendorState fpga_vendor;
    IpVendorState ip_vendor;
    DesignerState designer;
};

/// Step 5 on the IP vendor's side: looks up the ordered FPGA's C-R pairs,
/// consumes one unused challenge and locks the core. Throws Error for an
/// unregistered FPGA, an unknown IP or exhausted challenges.
Deliverable fulfill_order(IpVendorState &vendor, const OrderRequest &order, unsigned license_bits,
                          std::uint64_t rng_seed);

/// Runs the seven-step licensing exchange end to end. Throws Error if the
/// designer's activation of the delivered IP does not unlock.
ProtocolRun run_protocol(const ProtocolConfig &config, const Fsm &ip);

/// Measures `device` at `challenge` and walks the deliverable's lock.
UnlockOutcome activate(const Deliverable &deliverable, const MockPuf &device, std::uint64_t challenge);

} // namespace fsmlock
