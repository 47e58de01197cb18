#include "sidnc/packet_state.hpp"

#include "sidnc/errors.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace sidnc {

void BroadcastConfig::validate() const {
  if (packets < 1) throw InvalidConfig("packet count K must be at least 1");
  if (receivers < 1) throw InvalidConfig("receiver count N must be at least 1");
  if (!(erasure >= 0.0 && erasure < 1.0))
    throw InvalidConfig("erasure probability must lie in [0, 1)");
  if (trials < 1) throw InvalidConfig("trial count must be at least 1");
}

StateFeedbackMatrix::StateFeedbackMatrix(std::size_t receivers, std::size_t packets)
    : StateFeedbackMatrix(std::vector<IndexSet>(receivers, IndexSet(packets)), packets) {}

StateFeedbackMatrix::StateFeedbackMatrix(std::vector<IndexSet> wants, std::size_t packets)
    : packets_(packets), wants_(std::move(wants)), targets_(packets, IndexSet(wants_.size())) {
  for (std::size_t n = 0; n < wants_.size(); ++n) {
    if (wants_[n].size() != packets)
      throw std::invalid_argument("wants set width does not match packet count");
    for (auto k = wants_[n].find_first(); k != npos; k = wants_[n].find_next(k)) {
      targets_[k].set(n);
      ++total_;
    }
  }
}

StateFeedbackMatrix StateFeedbackMatrix::from_wants(
    std::size_t packets, const std::vector<std::vector<std::size_t>>& wants) {
  std::vector<IndexSet> rows;
  rows.reserve(wants.size());
  for (const auto& w : wants) {
    IndexSet row(packets);
    for (auto k : w) {
      if (k >= packets) throw std::out_of_range("wanted packet index out of range");
      row.set(k);
    }
    rows.push_back(std::move(row));
  }
  return StateFeedbackMatrix(std::move(rows), packets);
}

IndexSet StateFeedbackMatrix::wanted_packets() const {
  IndexSet s(packets_);
  for (const auto& row : wants_) s |= row;
  return s;
}

std::size_t StateFeedbackMatrix::max_wants() const {
  std::size_t best = 0;
  for (const auto& row : wants_) best = std::max(best, row.count());
  return best;
}

StateFeedbackMatrix StateFeedbackMatrix::without(const std::vector<DecodeEvent>& decoded) const {
  if (decoded.empty()) return *this;
  auto rows = wants_;
  for (const auto& e : decoded) rows.at(e.receiver).reset(e.packet);
  return StateFeedbackMatrix(std::move(rows), packets_);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t stream) {
  return splitmix64(splitmix64(splitmix64(master_seed) ^ trial) ^ stream);
}

ErasureChannel::ErasureChannel(double erasure, std::uint64_t master_seed, std::uint64_t trial,
                               std::uint64_t stream)
    : erasure_(erasure), engine_(derive_stream_seed(master_seed, trial, stream)) {
  if (!(erasure >= 0.0 && erasure < 1.0))
    throw InvalidConfig("erasure probability must lie in [0, 1)");
}

bool ErasureChannel::erased() {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return u < erasure_;
}

IndexSet ErasureChannel::broadcast(std::size_t receivers) {
  IndexSet got(receivers);
  for (std::size_t n = 0; n < receivers; ++n)
    if (!erased()) got.set(n);
  return got;
}

StateFeedbackMatrix systematic_phase(const BroadcastConfig& config, ErasureChannel& channel) {
  config.validate();
  std::vector<IndexSet> rows(config.receivers, IndexSet(config.packets));
  for (std::size_t k = 0; k < config.packets; ++k)
    for (std::size_t n = 0; n < config.receivers; ++n)
      if (channel.erased()) rows[n].set(k);
  return StateFeedbackMatrix(std::move(rows), config.packets);
}

std::vector<DecodeEvent> instant_decodes(const StateFeedbackMatrix& sfm, const CodingSet& coding_set,
                                         const IndexSet& received) {
  std::vector<DecodeEvent> out;
  const IndexSet members = coding_set.to_set(sfm.packets());
  for (auto n = received.find_first(); n != npos; n = received.find_next(n)) {
    const IndexSet hit = members & sfm.wants_set(n);
    if (hit.count() == 1) out.push_back({n, hit.find_first()});
  }
  return out;
}

StateFeedbackMatrix apply_reception(const StateFeedbackMatrix& sfm, const CodingSet& coding_set,
                                    const IndexSet& received) {
  const IndexSet members = coding_set.to_set(sfm.packets());
  for (std::size_t n = 0; n < sfm.receivers(); ++n)
    if ((members & sfm.wants_set(n)).count() > 1)
      throw ConflictingCodingSet("receiver R" + std::to_string(n + 1) + " wants two packets of " +
                                 coding_set.label());
  return sfm.without(instant_decodes(sfm, coding_set, received));
}

StateFeedbackMatrix fig1_sfm() {
  return StateFeedbackMatrix::from_wants(6, {{0, 4, 5}, {1, 5}, {2, 3, 4}, {3, 5}, {2, 4}});
}

StateFeedbackMatrix parse_sfm(std::istream& in) {
  long long k = 0;
  long long n = 0;
  if (!(in >> k >> n) || k < 1 || n < 1) throw ParseError("SFM header must be \"K N\" with K, N >= 1");
  const auto packets = static_cast<std::size_t>(k);
  std::vector<IndexSet> rows(static_cast<std::size_t>(n), IndexSet(packets));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < packets; ++c) {
      int digit = -1;
      if (!(in >> digit) || (digit != 0 && digit != 1))
        throw ParseError("SFM entry (" + std::to_string(r + 1) + ", " + std::to_string(c + 1) +
                         ") must be 0 or 1");
      if (digit) rows[r].set(c);
    }
  std::string trailing;
  if (in >> trailing) throw ParseError("unexpected trailing SFM content: " + trailing);
  return StateFeedbackMatrix(std::move(rows), packets);
}

StateFeedbackMatrix load_sfm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open SFM file " + path);
  try {
    return parse_sfm(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_sfm(const StateFeedbackMatrix& sfm) {
  std::ostringstream out;
  out << sfm.packets() << ' ' << sfm.receivers() << '\n';
  for (std::size_t n = 0; n < sfm.receivers(); ++n) {
    for (std::size_t k = 0; k < sfm.packets(); ++k) out << (k ? " " : "") << (sfm.wants(n, k) ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

} // namespace sidnc
