#pragma once

// Event log (events.jsonl) encoding and SHA-256 digests.

#include <mobcoin/ledger.hpp>

#include <json.hpp>
#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mobcoin {

/// Streaming SHA-256.
class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
      throw std::runtime_error("SHA-256 init failed");
  }

  void update(std::string_view data) { EVP_DigestUpdate(ctx_.get(), data.data(), data.size()); }

  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md, &len);
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out.push_back(digits[md[i] >> 4]);
      out.push_back(digits[md[i] & 15]);
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

inline std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data);
  return h.hex();
}

inline std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  Sha256 h;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h.update(std::string_view(buf.data(), static_cast<std::size_t>(in.gcount())));
  }
  return h.hex();
}

namespace detail {

template <class Int>
void append_int(std::string& out, Int v) {
  char buf[24];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, r.ptr);
}

inline void append_json_string(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof esc, "\\u%04x", c);
          out += esc;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

inline void append_account(std::string& out, AccountId id) {
  out.push_back('"');
  out += kAccountKindNames[static_cast<std::size_t>(id.kind)];
  out.push_back(':');
  append_int(out, id.index);
  out.push_back('"');
}

}  // namespace detail

/// One events.jsonl line (with trailing newline). Field order is fixed:
/// seq, day, kind, from, to, amount_cents, memo.
inline void append_event_line(std::string& out, const LedgerEvent& e) {
  out += "{\"seq\":";
  detail::append_int(out, e.seq);
  out += ",\"day\":";
  detail::append_int(out, e.day);
  out += ",\"kind\":\"";
  out += to_string(e.kind);
  out += "\",\"from\":";
  detail::append_account(out, e.from);
  out += ",\"to\":";
  detail::append_account(out, e.to);
  out += ",\"amount_cents\":";
  detail::append_int(out, e.amount.value);
  out += ",\"memo\":";
  detail::append_json_string(out, e.memo);
  out += "}\n";
}

inline std::string event_line(const LedgerEvent& e) {
  std::string s;
  append_event_line(s, e);
  return s;
}

struct EventParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline LedgerEvent parse_event_line(std::string_view line, std::size_t line_no = 0) {
  const auto fail = [&](const std::string& what) {
    return EventParseError("line " + std::to_string(line_no) + ": " + what);
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw fail(e.what());
  }
  if (!j.is_object()) throw fail("expected object");
  for (const char* k : {"seq", "day", "kind", "from", "to", "amount_cents", "memo"})
    if (!j.contains(k)) throw fail(std::string("missing field ") + k);
  LedgerEvent e;
  try {
    e.seq = j.at("seq").get<std::uint64_t>();
    e.day = j.at("day").get<std::int32_t>();
    const auto kind = parse_event_kind(j.at("kind").get<std::string>());
    const auto from = AccountId::parse(j.at("from").get<std::string>());
    const auto to = AccountId::parse(j.at("to").get<std::string>());
    if (!kind || !from || !to) throw fail("bad kind or account");
    e.kind = *kind;
    e.from = *from;
    e.to = *to;
    e.amount = Cents{j.at("amount_cents").get<std::int64_t>()};
    e.memo = j.at("memo").get<std::string>();
  } catch (const nlohmann::json::exception& ex) {
    throw fail(ex.what());
  }
  return e;
}

inline std::vector<LedgerEvent> read_events(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<LedgerEvent> events;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    events.push_back(parse_event_line(line, n));
  }
  return events;
}

/// Findings of an offline audit of an event stream.
struct AuditReport {
  BalanceMap balances;
  std::uint64_t events{0};
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Replays `stream` and checks, beyond what replay() enforces, that the
/// balances sum to zero and that every year-end expiry block leaves all
/// persons at exactly zero. An edited amount anywhere before an expiry shows
/// up as a person left with a residue or driven negative.
inline AuditReport audit_events(std::span<const LedgerEvent> stream) {
  AuditReport r;
  r.events = stream.size();
  try {
    std::uint64_t expected = 0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const auto& e = stream[i];
      if (e.seq != expected) throw SequenceGap(expected, e.seq);
      if (e.amount.value <= 0) throw InvalidEvent("non-positive amount at seq " + std::to_string(e.seq));
      r.balances.add(e.from, -e.amount);
      r.balances.add(e.to, e.amount);
      if (!e.from.is_agency() && r.balances.get(e.from) < Cents{}) throw NegativeBalanceAt(e.seq);
      ++expected;
      const bool block_end = e.kind == EventKind::Expiry &&
                             (i + 1 == stream.size() || stream[i + 1].kind != EventKind::Expiry);
      if (block_end) {
        const auto persons = r.balances.of_kind(AccountKind::Person);
        for (std::size_t k = 0; k < persons.size(); ++k)
          if (persons[k].value != 0)
            r.problems.push_back("Person:" + std::to_string(k) + " holds " + format_coins(persons[k]) +
                                 " after expiry at seq " + std::to_string(e.seq));
      }
    }
  } catch (const LedgerError& ex) {
    r.problems.emplace_back(ex.what());
  }
  if (!conservation_check(r.balances)) r.problems.emplace_back("balances do not sum to zero");
  return r;
}

/// Ledger sink that writes events.jsonl and hashes the bytes as they go.
class EventLogWriter {
 public:
  explicit EventLogWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot create " + path);
    buf_.reserve(kFlushAt + 256);
  }
  EventLogWriter(const EventLogWriter&) = delete;
  EventLogWriter& operator=(const EventLogWriter&) = delete;
  ~EventLogWriter() { flush(); }

  void write(const LedgerEvent& e) {
    append_event_line(buf_, e);
    ++count_;
    if (buf_.size() >= kFlushAt) flush();
  }

  void flush() {
    if (buf_.empty()) return;
    hash_.update(buf_);
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    out_.flush();
    buf_.clear();
  }

  std::uint64_t count() const { return count_; }

  /// Digest of everything written so far; call once, at the end.
  std::string finish() {
    flush();
    return hash_.hex();
  }

 private:
  static constexpr std::size_t kFlushAt = 1 << 20;
  std::ofstream out_;
  std::string buf_;
  Sha256 hash_;
  std::uint64_t count_{0};
};

}  // namespace mobcoin
