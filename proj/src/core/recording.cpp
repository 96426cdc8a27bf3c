#include "recording.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "text.hpp"

namespace eegtda {

Recording::Recording(std::vector<std::string> channels, Eigen::MatrixXd samples, double rate)
    : channels_(std::move(channels)), samples_(std::move(samples)), rate_(rate) {
    if (static_cast<Eigen::Index>(channels_.size()) != samples_.rows()) {
        fail(ErrorCode::kData, "recording has " + std::to_string(channels_.size()) +
                                   " labels but " + std::to_string(samples_.rows()) + " channels");
    }
    if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
        fail(ErrorCode::kConfig, "sampling rate must be positive, got " + format_double(rate_));
    }
    if (samples_.cols() < 2) {
        fail(ErrorCode::kInsufficientData, "recording needs at least 2 samples, got " +
                                               std::to_string(samples_.cols()));
    }
    if (!samples_.allFinite()) {
        fail(ErrorCode::kData, "recording contains non-finite samples");
    }
}

std::optional<Eigen::Index> Recording::channel_index(const std::string& label) const {
    auto it = std::find(channels_.begin(), channels_.end(), label);
    if (it == channels_.end()) return std::nullopt;
    return static_cast<Eigen::Index>(it - channels_.begin());
}

Montage::Montage(std::string name, std::vector<std::string> out_labels,
                 std::vector<std::string> in_labels, std::vector<MontageTerm> terms)
    : name_(std::move(name)),
      out_labels_(std::move(out_labels)),
      in_labels_(std::move(in_labels)),
      terms_(std::move(terms)) {
    std::vector<bool> has_weight(out_labels_.size(), false);
    for (const auto& term : terms_) {
        if (term.output >= out_labels_.size() || term.input >= in_labels_.size()) {
            fail(ErrorCode::kConfig, "montage '" + name_ + "' references an index out of range");
        }
        if (!std::isfinite(term.weight)) {
            fail(ErrorCode::kConfig, "montage '" + name_ + "' has a non-finite weight");
        }
        if (term.weight != 0.0) has_weight[term.output] = true;
    }
    for (std::size_t r = 0; r < out_labels_.size(); ++r) {
        if (!has_weight[r]) {
            fail(ErrorCode::kConfig, "montage '" + name_ + "' output '" + out_labels_[r] +
                                         "' has no nonzero weight");
        }
    }
}

Montage Montage::average(const std::vector<std::string>& electrodes, std::string name) {
    const std::size_t n = electrodes.size();
    std::vector<MontageTerm> terms;
    const double share = 1.0 / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            terms.push_back({r, c, (r == c ? 1.0 : 0.0) - share});
        }
    }
    std::vector<std::string> out;
    for (const auto& e : electrodes) out.push_back(e + "-avg");
    return Montage(std::move(name), std::move(out), electrodes, std::move(terms));
}

Montage Montage::reference(const std::vector<std::string>& electrodes, const std::string& ref,
                           bool keep_ref, std::string name) {
    auto ref_it = std::find(electrodes.begin(), electrodes.end(), ref);
    if (ref_it == electrodes.end()) {
        fail(ErrorCode::kConfig, "reference electrode '" + ref + "' not in electrode list");
    }
    const std::size_t ref_index = static_cast<std::size_t>(ref_it - electrodes.begin());
    std::vector<std::string> out;
    std::vector<MontageTerm> terms;
    for (std::size_t c = 0; c < electrodes.size(); ++c) {
        if (c == ref_index && !keep_ref) continue;
        const std::size_t row = out.size();
        out.push_back(electrodes[c] + "-" + ref);
        // A kept reference row is identically zero but still lists its terms.
        terms.push_back({row, c, 1.0});
        terms.push_back({row, ref_index, -1.0});
    }
    return Montage(std::move(name), std::move(out), electrodes, std::move(terms));
}

Montage Montage::bipolar(const std::vector<std::pair<std::string, std::string>>& pairs,
                         std::string name) {
    std::vector<std::string> in;
    auto index_of = [&in](const std::string& label) {
        auto it = std::find(in.begin(), in.end(), label);
        if (it != in.end()) return static_cast<std::size_t>(it - in.begin());
        in.push_back(label);
        return in.size() - 1;
    };
    std::vector<std::string> out;
    std::vector<MontageTerm> terms;
    for (const auto& [a, b] : pairs) {
        const std::size_t row = out.size();
        out.push_back(a + "-" + b);
        terms.push_back({row, index_of(a), 1.0});
        terms.push_back({row, index_of(b), -1.0});
    }
    return Montage(std::move(name), std::move(out), std::move(in), std::move(terms));
}

const char* to_string(SegmentLabel label) noexcept {
    switch (label) {
        case SegmentLabel::kIed: return "IED";
        case SegmentLabel::kBackground: return "BACKGROUND";
        case SegmentLabel::kUnlabeled: return "UNLABELED";
    }
    return "UNLABELED";
}

SegmentLabel parse_segment_label(const std::string& text) {
    const std::string t = trim(text);
    if (t == "IED") return SegmentLabel::kIed;
    if (t == "BACKGROUND") return SegmentLabel::kBackground;
    if (t == "UNLABELED" || t.empty()) return SegmentLabel::kUnlabeled;
    fail(ErrorCode::kParse, "unknown segment label '" + t + "'");
}

// ---------------------------------------------------------------------------
// EDF

namespace {

constexpr std::size_t kEdfMainHeader = 256;
constexpr std::size_t kEdfSignalHeader = 256;

class EdfHeaderReader {
public:
    explicit EdfHeaderReader(const std::vector<char>& bytes) : bytes_(bytes) {}

    std::string text(std::size_t offset, std::size_t len) const {
        if (offset + len > bytes_.size()) {
            fail(ErrorCode::kParse, "EDF header truncated at byte offset " + std::to_string(offset));
        }
        return trim(std::string(bytes_.data() + offset, len));
    }

    double number(std::size_t offset, std::size_t len, const char* what) const {
        const std::string t = text(offset, len);
        double value = 0.0;
        if (!parse_double(t, value)) {
            fail(ErrorCode::kParse, std::string("EDF header field '") + what + "' at byte offset " +
                                        std::to_string(offset) + " is not numeric: '" + t + "'");
        }
        return value;
    }

    long integer(std::size_t offset, std::size_t len, const char* what) const {
        const std::string t = text(offset, len);
        long value = 0;
        auto res = std::from_chars(t.data(), t.data() + t.size(), value);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
            fail(ErrorCode::kParse, std::string("EDF header field '") + what + "' at byte offset " +
                                        std::to_string(offset) + " is not an integer: '" + t + "'");
        }
        return value;
    }

private:
    const std::vector<char>& bytes_;
};

std::vector<char> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
    return std::vector<char>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Fixed-width ASCII field, left aligned and space padded.
void put_field(std::string& out, const std::string& value, std::size_t width) {
    if (value.size() > width) {
        fail(ErrorCode::kUnsupportedFormat, "EDF field '" + value + "' exceeds " +
                                                std::to_string(width) + " characters");
    }
    out += value;
    out.append(width - value.size(), ' ');
}

// Shortest decimal of at most 8 characters that bounds `x` from below
// (round_up = false) or above (round_up = true).
std::string edf_bound(double x, bool round_up) {
    for (int precision = 6; precision >= 0; --precision) {
        const double scale = std::pow(10.0, precision);
        double v = round_up ? std::ceil(x * scale) / scale : std::floor(x * scale) / scale;
        for (int attempt = 0; attempt < 3; ++attempt) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
            std::string s = buf;
            if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) {
                s = s.substr(1);
            }
            if (s.size() > 8) break;
            double parsed = 0.0;
            parse_double(s, parsed);
            if (round_up ? parsed >= x : parsed <= x) return s;
            v += (round_up ? 1.0 : -1.0) / scale;
        }
    }
    fail(ErrorCode::kUnsupportedFormat, "amplitude " + format_double(x) +
                                            " cannot be represented in an EDF header field");
}

}  // namespace

Recording read_edf(const std::filesystem::path& path) {
    const std::vector<char> bytes = read_all(path);
    const EdfHeaderReader hdr(bytes);
    if (bytes.size() < kEdfMainHeader) {
        fail(ErrorCode::kParse, "EDF header truncated at byte offset " + std::to_string(bytes.size()));
    }
    const std::string version = hdr.text(0, 8);
    if (version != "0") {
        fail(ErrorCode::kParse, "EDF version field at byte offset 0 is '" + version + "', expected '0'");
    }
    const std::string reserved = hdr.text(192, 44);
    if (reserved.rfind("EDF+D", 0) == 0) {
        fail(ErrorCode::kUnsupportedFormat, "discontinuous EDF+ files are not supported");
    }
    const long header_bytes = hdr.integer(184, 8, "header bytes");
    long record_count = hdr.integer(236, 8, "number of data records");
    const double record_duration = hdr.number(244, 8, "data record duration");
    const long signal_count = hdr.integer(252, 4, "number of signals");
    if (signal_count <= 0) {
        fail(ErrorCode::kParse, "EDF signal count at byte offset 252 must be positive");
    }
    const auto ns = static_cast<std::size_t>(signal_count);
    if (header_bytes != static_cast<long>(kEdfMainHeader + ns * kEdfSignalHeader)) {
        fail(ErrorCode::kParse, "EDF header size at byte offset 184 is " +
                                    std::to_string(header_bytes) + ", expected " +
                                    std::to_string(kEdfMainHeader + ns * kEdfSignalHeader));
    }
    if (!(record_duration > 0.0)) {
        fail(ErrorCode::kParse, "EDF record duration at byte offset 244 must be positive");
    }

    struct SignalInfo {
        std::string label;
        double phys_min, phys_max;
        long dig_min, dig_max;
        long samples_per_record;
    };
    std::vector<SignalInfo> signals(ns);
    std::size_t base = kEdfMainHeader;
    for (std::size_t s = 0; s < ns; ++s) signals[s].label = hdr.text(base + s * 16, 16);
    base += ns * (16 + 80 + 8);
    for (std::size_t s = 0; s < ns; ++s) signals[s].phys_min = hdr.number(base + s * 8, 8, "physical minimum");
    base += ns * 8;
    for (std::size_t s = 0; s < ns; ++s) signals[s].phys_max = hdr.number(base + s * 8, 8, "physical maximum");
    base += ns * 8;
    for (std::size_t s = 0; s < ns; ++s) signals[s].dig_min = hdr.integer(base + s * 8, 8, "digital minimum");
    base += ns * 8;
    for (std::size_t s = 0; s < ns; ++s) signals[s].dig_max = hdr.integer(base + s * 8, 8, "digital maximum");
    base += ns * (8 + 80);
    for (std::size_t s = 0; s < ns; ++s) {
        signals[s].samples_per_record = hdr.integer(base + s * 8, 8, "samples per record");
        if (signals[s].samples_per_record <= 0) {
            fail(ErrorCode::kParse, "EDF samples per record at byte offset " +
                                        std::to_string(base + s * 8) + " must be positive");
        }
    }

    std::size_t record_samples = 0;
    for (const auto& sig : signals) record_samples += static_cast<std::size_t>(sig.samples_per_record);
    const std::size_t record_bytes = record_samples * 2;
    const std::size_t data_bytes = bytes.size() - static_cast<std::size_t>(header_bytes);
    if (record_count < 0) record_count = static_cast<long>(data_bytes / record_bytes);
    const auto records = static_cast<std::size_t>(record_count);
    if (data_bytes < records * record_bytes) {
        fail(ErrorCode::kParse, "EDF data record " + std::to_string(data_bytes / record_bytes) +
                                    " is truncated");
    }

    std::vector<std::size_t> kept;
    long rate_samples = -1;
    for (std::size_t s = 0; s < ns; ++s) {
        if (signals[s].label == "EDF Annotations") continue;
        if (rate_samples < 0) {
            rate_samples = signals[s].samples_per_record;
        } else if (signals[s].samples_per_record != rate_samples) {
            fail(ErrorCode::kUnsupportedFormat, "EDF signals have mixed sampling rates ('" +
                                                    signals[kept.front()].label + "' vs '" +
                                                    signals[s].label + "')");
        }
        if (signals[s].dig_max <= signals[s].dig_min) {
            fail(ErrorCode::kParse, "EDF signal '" + signals[s].label + "' has an empty digital range");
        }
        kept.push_back(s);
    }
    if (kept.empty()) fail(ErrorCode::kParse, "EDF file has no data signals");

    const auto spr = static_cast<std::size_t>(rate_samples);
    Eigen::MatrixXd samples(static_cast<Eigen::Index>(kept.size()),
                            static_cast<Eigen::Index>(records * spr));
    std::vector<std::size_t> offsets(ns, 0);
    for (std::size_t s = 1; s < ns; ++s) {
        offsets[s] = offsets[s - 1] + static_cast<std::size_t>(signals[s - 1].samples_per_record);
    }
    const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + header_bytes);
    for (std::size_t k = 0; k < kept.size(); ++k) {
        const auto& sig = signals[kept[k]];
        const double gain = (sig.phys_max - sig.phys_min) / static_cast<double>(sig.dig_max - sig.dig_min);
        for (std::size_t r = 0; r < records; ++r) {
            const unsigned char* p = data + r * record_bytes + offsets[kept[k]] * 2;
            for (std::size_t i = 0; i < spr; ++i) {
                const auto raw = static_cast<std::int16_t>(
                    static_cast<std::uint16_t>(p[2 * i]) | (static_cast<std::uint16_t>(p[2 * i + 1]) << 8));
                samples(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(r * spr + i)) =
                    sig.phys_min + (static_cast<double>(raw) - static_cast<double>(sig.dig_min)) * gain;
            }
        }
    }
    std::vector<std::string> labels;
    for (std::size_t s : kept) labels.push_back(signals[s].label);
    if (samples.cols() < 2) {
        fail(ErrorCode::kParse, "EDF file holds " + std::to_string(samples.cols()) +
                                    " samples per signal, need at least 2");
    }
    return Recording(std::move(labels), std::move(samples), static_cast<double>(spr) / record_duration);
}

void write_edf(const std::filesystem::path& path, const Recording& rec) {
    const double rate = rec.rate();
    if (std::abs(rate - std::round(rate)) > 1e-9) {
        fail(ErrorCode::kUnsupportedFormat, "EDF writer requires an integral sampling rate");
    }
    const auto rate_int = static_cast<long>(std::round(rate));
    const auto total = static_cast<long>(rec.sample_count());
    const long per_record = std::gcd(total, rate_int);
    const std::string duration = format_compact(static_cast<double>(per_record) / rate, 8);
    double parsed_duration = 0.0;
    parse_double(duration, parsed_duration);
    if (std::abs(parsed_duration * rate - static_cast<double>(per_record)) > 1e-9) {
        fail(ErrorCode::kUnsupportedFormat, "record duration for " + std::to_string(total) +
                                                " samples at " + format_double(rate) +
                                                " Hz does not fit an EDF header field");
    }
    const long records = total / per_record;
    const auto ns = static_cast<std::size_t>(rec.channel_count());
    constexpr long kDigMin = -32768;
    constexpr long kDigMax = 32767;

    std::vector<std::string> pmin_text(ns), pmax_text(ns);
    std::vector<double> pmin(ns), pmax(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        double lo = rec.samples().row(static_cast<Eigen::Index>(s)).minCoeff();
        double hi = rec.samples().row(static_cast<Eigen::Index>(s)).maxCoeff();
        if (hi - lo < 1e-6 * std::max(1.0, std::abs(lo))) {
            lo -= 1.0;
            hi += 1.0;
        }
        pmin_text[s] = edf_bound(lo, false);
        pmax_text[s] = edf_bound(hi, true);
        parse_double(pmin_text[s], pmin[s]);
        parse_double(pmax_text[s], pmax[s]);
    }

    std::string header;
    put_field(header, "0", 8);
    put_field(header, "X X X X", 80);
    put_field(header, "Startdate X X X X", 80);
    put_field(header, "01.01.00", 8);
    put_field(header, "00.00.00", 8);
    put_field(header, std::to_string(kEdfMainHeader + ns * kEdfSignalHeader), 8);
    put_field(header, "", 44);
    put_field(header, std::to_string(records), 8);
    put_field(header, duration, 8);
    put_field(header, std::to_string(ns), 4);
    for (std::size_t s = 0; s < ns; ++s) put_field(header, rec.channels()[s].substr(0, 16), 16);
    for (std::size_t s = 0; s < ns; ++s) put_field(header, "", 80);
    for (std::size_t s = 0; s < ns; ++s) put_field(header, "uV", 8);
    for (std::size_t s = 0; s < ns; ++s) put_field(header, pmin_text[s], 8);
    for (std::size_t s = 0; s < ns; ++s) put_field(header, pmax_text[s], 8);
    for (std::size_t s = 0; s < ns; ++s) put_field(header, std::to_string(kDigMin), 8);
    for (std::size_t s = 0; s < ns; ++s) put_field(header, std::to_string(kDigMax), 8);
    for (std::size_t s = 0; s < ns; ++s) put_field(header, "", 80);
    for (std::size_t s = 0; s < ns; ++s) put_field(header, std::to_string(per_record), 8);
    for (std::size_t s = 0; s < ns; ++s) put_field(header, "", 32);

    std::string body;
    body.reserve(static_cast<std::size_t>(total) * ns * 2);
    for (long r = 0; r < records; ++r) {
        for (std::size_t s = 0; s < ns; ++s) {
            const double scale = static_cast<double>(kDigMax - kDigMin) / (pmax[s] - pmin[s]);
            for (long i = 0; i < per_record; ++i) {
                const double x = rec.samples()(static_cast<Eigen::Index>(s),
                                               static_cast<Eigen::Index>(r * per_record + i));
                long d = std::lround((x - pmin[s]) * scale + static_cast<double>(kDigMin));
                d = std::clamp(d, kDigMin, kDigMax);
                const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(d));
                body.push_back(static_cast<char>(u & 0xff));
                body.push_back(static_cast<char>(u >> 8));
            }
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) fail(ErrorCode::kIo, "write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// CSV

Recording read_csv(const std::filesystem::path& path, double rate) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> labels;
    std::vector<double> values;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells = split(line, ',');
        if (labels.empty()) {
            for (auto& c : cells) labels.push_back(trim(c));
            continue;
        }
        if (cells.size() != labels.size()) {
            fail(ErrorCode::kParse, path.string() + ": row " + std::to_string(line_no) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(labels.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            if (!parse_double(trim(cells[c]), v)) {
                fail(ErrorCode::kParse, path.string() + ": row " + std::to_string(line_no) + " column " +
                                            std::to_string(c + 1) + " is not numeric: '" + cells[c] + "'");
            }
            values.push_back(v);
        }
        ++rows;
    }
    if (labels.empty()) fail(ErrorCode::kParse, path.string() + ": missing header row");
    if (rows < 2) {
        fail(ErrorCode::kParse, path.string() + ": " + std::to_string(rows) + " data rows, need at least 2");
    }
    const auto channels = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXd samples(channels, static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < channels; ++c) {
            samples(c, static_cast<Eigen::Index>(r)) = values[r * labels.size() + static_cast<std::size_t>(c)];
        }
    }
    return Recording(std::move(labels), std::move(samples), rate);
}

void write_csv(const std::filesystem::path& path, const Recording& rec, const std::string& comment) {
    std::string out;
    if (!comment.empty()) out += "# " + comment + "\n";
    out += join(rec.channels(), ",") + "\n";
    const auto& s = rec.samples();
    for (Eigen::Index t = 0; t < s.cols(); ++t) {
        for (Eigen::Index c = 0; c < s.rows(); ++c) {
            if (c) out += ',';
            out += format_double(s(c, t));
        }
        out += '\n';
    }
    write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// Montage

Recording apply_montage(const Recording& rec, const Montage& mon) {
    std::vector<Eigen::Index> input_rows;
    input_rows.reserve(mon.in_labels().size());
    for (const auto& label : mon.in_labels()) {
        auto idx = rec.channel_index(label);
        if (!idx) {
            fail(ErrorCode::kConfig, "montage '" + mon.name() + "' needs channel '" + label +
                                         "' which the recording does not have");
        }
        input_rows.push_back(*idx);
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(mon.out_labels().size()),
                                                rec.sample_count());
    for (const auto& term : mon.terms()) {
        out.row(static_cast<Eigen::Index>(term.output)) +=
            term.weight * rec.samples().row(input_rows[term.input]);
    }
    return Recording(mon.out_labels(), std::move(out), rec.rate());
}

Montage read_montage(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::kIo, "cannot open montage " + path.string());
    std::string name = path.stem().string();
    std::vector<std::string> out_labels, in_labels;
    std::map<std::string, std::size_t> out_index, in_index;
    std::vector<MontageTerm> terms;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            if (body.rfind("name:", 0) == 0) name = trim(body.substr(5));
            continue;
        }
        auto cells = split(line, ',');
        if (!header_seen) {
            header_seen = true;
            if (cells.size() != 3 || trim(cells[0]) != "output") {
                fail(ErrorCode::kParse, path.string() + ": expected header 'output,input,weight'");
            }
            continue;
        }
        if (cells.size() != 3) {
            fail(ErrorCode::kParse, path.string() + ": row " + std::to_string(line_no) + " needs 3 cells");
        }
        const std::string o = trim(cells[0]);
        const std::string i = trim(cells[1]);
        double w = 0.0;
        if (!parse_double(trim(cells[2]), w)) {
            fail(ErrorCode::kParse, path.string() + ": row " + std::to_string(line_no) +
                                        " column 3 is not numeric");
        }
        auto [oit, onew] = out_index.try_emplace(o, out_labels.size());
        if (onew) out_labels.push_back(o);
        auto [iit, inew] = in_index.try_emplace(i, in_labels.size());
        if (inew) in_labels.push_back(i);
        terms.push_back({oit->second, iit->second, w});
    }
    if (out_labels.empty()) fail(ErrorCode::kParse, path.string() + ": montage has no rows");
    return Montage(std::move(name), std::move(out_labels), std::move(in_labels), std::move(terms));
}

void write_montage(const std::filesystem::path& path, const Montage& mon) {
    std::string out = "# name: " + mon.name() + "\noutput,input,weight\n";
    for (const auto& term : mon.terms()) {
        if (term.weight == 0.0) continue;
        out += mon.out_labels()[term.output] + "," + mon.in_labels()[term.input] + "," +
               format_double(term.weight) + "\n";
    }
    write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// Labels and segmentation

std::vector<LabelEntry> read_labels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::kIo, "cannot open label file " + path.string());
    std::vector<LabelEntry> labels;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        auto cells = split(line, ',');
        if (!header_seen) {
            header_seen = true;
            if (cells.size() != 3 || trim(cells[0]) != "source_id") {
                fail(ErrorCode::kParse, path.string() + ": expected header 'source_id,start_sample,label'");
            }
            continue;
        }
        if (cells.size() != 3) {
            fail(ErrorCode::kParse, path.string() + ": row " + std::to_string(line_no) + " needs 3 cells");
        }
        LabelEntry e;
        e.source_id = trim(cells[0]);
        const std::string start = trim(cells[1]);
        auto res = std::from_chars(start.data(), start.data() + start.size(), e.start_sample);
        if (res.ec != std::errc() || res.ptr != start.data() + start.size()) {
            fail(ErrorCode::kParse, path.string() + ": row " + std::to_string(line_no) +
                                        " column 2 is not a sample index");
        }
        e.label = parse_segment_label(cells[2]);
        if (e.label == SegmentLabel::kUnlabeled) {
            fail(ErrorCode::kParse, path.string() + ": row " + std::to_string(line_no) +
                                        " label must be IED or BACKGROUND");
        }
        labels.push_back(std::move(e));
    }
    return labels;
}

void write_labels(const std::filesystem::path& path, const std::vector<LabelEntry>& labels) {
    std::string out = "source_id,start_sample,label\n";
    for (const auto& e : labels) {
        out += e.source_id + "," + std::to_string(e.start_sample) + "," + to_string(e.label) + "\n";
    }
    write_text_file(path, out);
}

std::size_t window_length(double rate, double window_seconds) {
    if (!(window_seconds > 0.0) || !std::isfinite(window_seconds)) {
        fail(ErrorCode::kConfig, "window length must be positive, got " + format_double(window_seconds));
    }
    const double w = std::round(rate * window_seconds);
    if (w < 2.0) fail(ErrorCode::kConfig, "window holds fewer than 2 samples");
    return static_cast<std::size_t>(w);
}

namespace {

Segment cut(const Recording& rec, const std::string& source_id, std::size_t start, std::size_t width,
            SegmentLabel label) {
    Segment s;
    s.source_id = source_id;
    s.start_sample = start;
    s.channels = rec.channels();
    s.data = rec.samples().middleCols(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(width));
    s.rate = rec.rate();
    s.label = label;
    return s;
}

}  // namespace

std::vector<Segment> segment(const Recording& rec, const std::string& source_id,
                             double window_seconds, const std::vector<LabelEntry>& labels) {
    const std::size_t width = window_length(rec.rate(), window_seconds);
    const auto total = static_cast<std::size_t>(rec.sample_count());
    std::vector<Segment> out;
    out.reserve(labels.size());
    for (const auto& e : labels) {
        if (e.start_sample + width > total) {
            fail(ErrorCode::kRange, "window at start_sample " + std::to_string(e.start_sample) +
                                        " with length " + std::to_string(width) +
                                        " extends past the end of '" + source_id + "' (" +
                                        std::to_string(total) + " samples)");
        }
        out.push_back(cut(rec, source_id, e.start_sample, width, e.label));
    }
    return out;
}

std::vector<Segment> segment_tiling(const Recording& rec, const std::string& source_id,
                                    double window_seconds) {
    const std::size_t width = window_length(rec.rate(), window_seconds);
    const auto total = static_cast<std::size_t>(rec.sample_count());
    std::vector<Segment> out;
    for (std::size_t start = 0; start + width <= total; start += width) {
        out.push_back(cut(rec, source_id, start, width, SegmentLabel::kUnlabeled));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shipped montages

const std::vector<std::string>& standard_electrodes() {
    static const std::vector<std::string> electrodes = {
        "Fp1", "Fp2", "Fpz", "F7", "F3", "Fz", "F4", "F8", "F9", "F10",
        "T3",  "C3",  "Cz",  "C4", "T4", "T5", "P3", "Pz", "P4", "T6",
        "O1",  "Oz",  "O2",  "A1", "A2", "T1", "T2", "Iz"};
    return electrodes;
}

namespace {

std::vector<std::string> electrodes_without_cz() {
    std::vector<std::string> out;
    for (const auto& e : standard_electrodes()) {
        if (e != "Cz") out.push_back(e);
    }
    return out;
}

}  // namespace

Montage standard_bipolar() {
    // Longitudinal double banana, the transverse temporal-central chain and
    // four extra pairs for the added 10-10 electrodes.
    return Montage::bipolar({{"Fp1", "F7"}, {"F7", "T3"}, {"T3", "T5"}, {"T5", "O1"},
                             {"Fp2", "F8"}, {"F8", "T4"}, {"T4", "T6"}, {"T6", "O2"},
                             {"Fp1", "F3"}, {"F3", "C3"}, {"C3", "P3"}, {"P3", "O1"},
                             {"Fp2", "F4"}, {"F4", "C4"}, {"C4", "P4"}, {"P4", "O2"},
                             {"Fz", "Cz"},  {"Cz", "Pz"},  {"A1", "T3"}, {"T3", "C3"},
                             {"C3", "Cz"},  {"Cz", "C4"},  {"C4", "T4"}, {"T4", "A2"},
                             {"Fpz", "Fz"}, {"Pz", "Oz"},  {"F9", "T1"}, {"T2", "F10"}},
                            "bipolar");
}

Montage standard_average() { return Montage::average(electrodes_without_cz(), "average"); }

Montage standard_cz_reference() {
    return Montage::reference(standard_electrodes(), "Cz", false, "cz_reference");
}

}  // namespace eegtda
