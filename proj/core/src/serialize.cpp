#include "stylofuse/serialize.hpp"

#include <cstring>
#include <fstream>

#include "stylofuse/rng.hpp"

namespace stylofuse {

namespace {

constexpr char kMagic[8] = {'S', 'F', 'C', 'N', 'T', 'N', 'R', '1'};

enum class Tag : std::uint8_t {
  Int = 0,
  Real = 1,
  String = 2,
  TensorF64 = 3,
  StringList = 4,
};

void append_u8(std::vector<std::uint8_t>& out, std::uint8_t v) {
  out.push_back(v);
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  append_u64(out, bits);
}

void append_str(std::vector<std::uint8_t>& out, const std::string& s) {
  append_u32(out, static_cast<std::uint32_t>(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

// Cursor over the raw bytes; every read is bounds-checked so a truncated
// file surfaces as CorruptFile instead of undefined behaviour.
class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

  const std::uint8_t* take(std::size_t n) {
    if (n > remaining()) {
      throw Error(ErrorCode::CorruptFile, "file ends mid-record");
    }
    const std::uint8_t* p = data_ + pos_;
    pos_ += n;
    return p;
  }

  std::uint8_t read_u8() { return *take(1); }

  std::uint32_t read_u32() {
    const std::uint8_t* p = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
  }

  std::uint64_t read_u64() {
    const std::uint8_t* p = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
  }

  double read_f64() {
    std::uint64_t bits = read_u64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

  std::string read_str() {
    std::uint32_t len = read_u32();
    const std::uint8_t* p = take(len);
    return std::string(reinterpret_cast<const char*>(p), len);
  }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

std::uint64_t checksum_bytes(const std::uint8_t* data, std::size_t size) {
  return fnv1a64(
      std::string_view(reinterpret_cast<const char*>(data), size));
}

}  // namespace

void Container::put_int(const std::string& key, std::int64_t value) {
  entries_[key] = value;
}

void Container::put_real(const std::string& key, double value) {
  entries_[key] = value;
}

void Container::put_string(const std::string& key, std::string value) {
  entries_[key] = std::move(value);
}

void Container::put_tensor(const std::string& key, const Eigen::MatrixXd& value) {
  Tensor t;
  t.shape = {static_cast<std::uint64_t>(value.rows()),
             static_cast<std::uint64_t>(value.cols())};
  t.data.reserve(static_cast<std::size_t>(value.size()));
  for (Eigen::Index i = 0; i < value.rows(); ++i) {
    for (Eigen::Index j = 0; j < value.cols(); ++j) {
      t.data.push_back(value(i, j));
    }
  }
  entries_[key] = std::move(t);
}

void Container::put_vector(const std::string& key, const Eigen::VectorXd& value) {
  Tensor t;
  t.shape = {static_cast<std::uint64_t>(value.size())};
  t.data.assign(value.data(), value.data() + value.size());
  entries_[key] = std::move(t);
}

void Container::put_strings(const std::string& key,
                            std::vector<std::string> value) {
  entries_[key] = std::move(value);
}

bool Container::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

const ContainerValue& Container::entry(const std::string& key,
                                       const char* want) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw Error(ErrorCode::MalformedFile,
                "container is missing the " + std::string(want) + " entry '" +
                    key + "'");
  }
  return it->second;
}

std::int64_t Container::get_int(const std::string& key) const {
  const auto& v = entry(key, "int");
  if (const auto* p = std::get_if<std::int64_t>(&v)) return *p;
  throw Error(ErrorCode::MalformedFile, "entry '" + key + "' is not an int");
}

double Container::get_real(const std::string& key) const {
  const auto& v = entry(key, "real");
  if (const auto* p = std::get_if<double>(&v)) return *p;
  throw Error(ErrorCode::MalformedFile, "entry '" + key + "' is not a real");
}

const std::string& Container::get_string(const std::string& key) const {
  const auto& v = entry(key, "string");
  if (const auto* p = std::get_if<std::string>(&v)) return *p;
  throw Error(ErrorCode::MalformedFile, "entry '" + key + "' is not a string");
}

Eigen::MatrixXd Container::get_matrix(const std::string& key) const {
  const auto& v = entry(key, "tensor");
  const auto* t = std::get_if<Tensor>(&v);
  if (t == nullptr) {
    throw Error(ErrorCode::MalformedFile, "entry '" + key + "' is not a tensor");
  }
  if (t->shape.size() != 2) {
    throw Error(ErrorCode::MalformedFile,
                "entry '" + key + "' has rank " +
                    std::to_string(t->shape.size()) + ", expected 2");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(t->shape[0]),
                    static_cast<Eigen::Index>(t->shape[1]));
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = t->data[k++];
    }
  }
  return m;
}

Eigen::VectorXd Container::get_vector(const std::string& key) const {
  const auto& v = entry(key, "tensor");
  const auto* t = std::get_if<Tensor>(&v);
  if (t == nullptr) {
    throw Error(ErrorCode::MalformedFile, "entry '" + key + "' is not a tensor");
  }
  if (t->shape.size() != 1) {
    throw Error(ErrorCode::MalformedFile,
                "entry '" + key + "' has rank " +
                    std::to_string(t->shape.size()) + ", expected 1");
  }
  return Eigen::Map<const Eigen::VectorXd>(
      t->data.data(), static_cast<Eigen::Index>(t->data.size()));
}

const std::vector<std::string>& Container::get_strings(
    const std::string& key) const {
  const auto& v = entry(key, "string list");
  if (const auto* p = std::get_if<std::vector<std::string>>(&v)) return *p;
  throw Error(ErrorCode::MalformedFile,
              "entry '" + key + "' is not a string list");
}

std::vector<std::uint8_t> Container::to_bytes() const {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + sizeof kMagic);
  append_u32(out, kContainerFormatVersion);

  const std::size_t body_start = out.size();
  append_str(out, kind_);
  append_u32(out, static_cast<std::uint32_t>(entries_.size()));
  // std::map iterates in key order, so the byte stream is deterministic.
  for (const auto& [key, value] : entries_) {
    append_str(out, key);
    if (const auto* p = std::get_if<std::int64_t>(&value)) {
      append_u8(out, static_cast<std::uint8_t>(Tag::Int));
      append_u64(out, static_cast<std::uint64_t>(*p));
    } else if (const auto* p = std::get_if<double>(&value)) {
      append_u8(out, static_cast<std::uint8_t>(Tag::Real));
      append_f64(out, *p);
    } else if (const auto* p = std::get_if<std::string>(&value)) {
      append_u8(out, static_cast<std::uint8_t>(Tag::String));
      append_str(out, *p);
    } else if (const auto* p = std::get_if<Tensor>(&value)) {
      append_u8(out, static_cast<std::uint8_t>(Tag::TensorF64));
      append_u8(out, static_cast<std::uint8_t>(p->shape.size()));
      for (std::uint64_t d : p->shape) append_u64(out, d);
      for (double x : p->data) append_f64(out, x);
    } else {
      const auto& list = std::get<std::vector<std::string>>(value);
      append_u8(out, static_cast<std::uint8_t>(Tag::StringList));
      append_u64(out, list.size());
      for (const std::string& s : list) append_str(out, s);
    }
  }

  append_u64(out, checksum_bytes(out.data() + body_start,
                                 out.size() - body_start));
  return out;
}

Container Container::from_bytes(const std::vector<std::uint8_t>& bytes,
                                const std::string& expected_kind) {
  if (bytes.size() < sizeof kMagic + 4 ||
      std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw Error(ErrorCode::CorruptFile, "not a model container (bad magic)");
  }

  ByteReader r(bytes.data(), bytes.size());
  r.take(sizeof kMagic);
  const std::uint32_t version = r.read_u32();
  // Version is judged before the checksum so an honest format bump is
  // reported as such instead of as corruption.
  if (version != kContainerFormatVersion) {
    throw Error(ErrorCode::VersionMismatch,
                "container format version " + std::to_string(version) +
                    ", this build reads version " +
                    std::to_string(kContainerFormatVersion));
  }

  if (r.remaining() < 8) {
    throw Error(ErrorCode::CorruptFile, "file ends before the checksum");
  }
  const std::size_t body_start = r.pos();
  const std::size_t body_size = r.remaining() - 8;
  const std::uint64_t want =
      checksum_bytes(bytes.data() + body_start, body_size);
  std::uint64_t stored = 0;
  for (int i = 0; i < 8; ++i) {
    stored |= static_cast<std::uint64_t>(bytes[bytes.size() - 8 + i]) << (8 * i);
  }
  if (stored != want) {
    throw Error(ErrorCode::CorruptFile, "checksum mismatch");
  }

  Container c(r.read_str());
  if (c.kind_ != expected_kind) {
    throw Error(ErrorCode::MalformedFile,
                "container holds a '" + c.kind_ + "' payload, expected '" +
                    expected_kind + "'");
  }
  const std::uint32_t count = r.read_u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string key = r.read_str();
    const Tag tag = static_cast<Tag>(r.read_u8());
    switch (tag) {
      case Tag::Int:
        c.entries_[key] = static_cast<std::int64_t>(r.read_u64());
        break;
      case Tag::Real:
        c.entries_[key] = r.read_f64();
        break;
      case Tag::String:
        c.entries_[key] = r.read_str();
        break;
      case Tag::TensorF64: {
        Tensor t;
        const std::uint8_t rank = r.read_u8();
        std::uint64_t total = 1;
        for (std::uint8_t d = 0; d < rank; ++d) {
          t.shape.push_back(r.read_u64());
          total *= t.shape.back();
        }
        if (total > (1ull << 32)) {
          throw Error(ErrorCode::CorruptFile, "tensor size is implausible");
        }
        t.data.reserve(total);
        for (std::uint64_t k = 0; k < total; ++k) t.data.push_back(r.read_f64());
        c.entries_[key] = std::move(t);
        break;
      }
      case Tag::StringList: {
        std::vector<std::string> list;
        const std::uint64_t len = r.read_u64();
        if (len > bytes.size()) {
          throw Error(ErrorCode::CorruptFile, "string list length is implausible");
        }
        list.reserve(len);
        for (std::uint64_t k = 0; k < len; ++k) list.push_back(r.read_str());
        c.entries_[key] = std::move(list);
        break;
      }
      default:
        throw Error(ErrorCode::CorruptFile,
                    "unknown entry tag " +
                        std::to_string(static_cast<int>(tag)));
    }
  }
  return c;
}

void Container::save(const std::filesystem::path& path) const {
  const std::vector<std::uint8_t> bytes = to_bytes();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() +
                                        " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorCode::IoError, "short write to " + path.string());
  }
}

Container Container::load(const std::filesystem::path& path,
                          const std::string& expected_kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return from_bytes(bytes, expected_kind);
}

}  // namespace stylofuse
