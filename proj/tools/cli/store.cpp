#include "store.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "handles.hpp"

namespace cli {

MetaView::MetaView(const Meta& meta) {
    entries_.reserve(meta.size());
    for (const auto& [k, v] : meta) entries_.push_back({k.c_str(), v.c_str()});
}

Meta read_meta(const fs::path& path) {
    std::ifstream in(path);
    if (!in) fail(EEGTDA_ERR_IO, "cannot open " + path.string());
    Meta meta;
    std::string line;
    while (std::getline(in, line) && !line.empty() && line[0] == '#') {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        meta[strip(line.substr(1, colon - 1))] = strip(line.substr(colon + 1));
    }
    return meta;
}

void require_hash(const fs::path& path, const std::string& expected) {
    const Meta meta = read_meta(path);
    const auto it = meta.find("config_hash");
    if (it == meta.end()) fail(EEGTDA_ERR_HASH_MISMATCH, path.string() + " carries no config hash");
    if (it->second != expected) {
        fail(EEGTDA_ERR_HASH_MISMATCH, path.string() + " was built with config hash " + it->second + ", expected " +
                                           expected + "; rerun the producing stage with --force");
    }
}

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string segment_name(std::size_t id) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%05zu", id);
    return buf;
}

const char* label_name(int label) {
    switch (label) {
        case EEGTDA_LABEL_IED: return "IED";
        case EEGTDA_LABEL_BACKGROUND: return "BACKGROUND";
        default: return "UNLABELED";
    }
}

namespace {

int parse_label(const std::string& s, const fs::path& path) {
    if (s == "IED") return EEGTDA_LABEL_IED;
    if (s == "BACKGROUND") return EEGTDA_LABEL_BACKGROUND;
    if (s == "UNLABELED") return EEGTDA_LABEL_UNLABELED;
    fail(EEGTDA_ERR_PARSE, path.string() + ": unknown label '" + s + "'");
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

Store::Store(fs::path root) : root_(std::move(root)) {}

fs::path Store::landscape(std::size_t id, int dimension) const {
    return root_ / "landscapes" / (segment_name(id) + "_h" + std::to_string(dimension) + ".csv");
}

std::vector<fs::path> Store::outputs(const std::string& stage) const {
    if (stage == "synth") return {root_ / "corpus"};
    if (stage == "ingest") return {segments_dir()};
    if (stage == "reduce") return {root_ / "trajectories", spectra()};
    if (stage == "topo") return {root_ / "diagrams", root_ / "landscapes"};
    if (stage == "features") return {features()};
    if (stage == "train") return {model(), report(), evaluation()};
    return {};
}

std::optional<Json> Store::stamp(const std::string& stage) const {
    const fs::path p = stamp_path(stage);
    if (!fs::exists(p)) return std::nullopt;
    try {
        return Json::parse(read_text(p));
    } catch (const Json::parse_error& e) {
        fail(EEGTDA_ERR_PARSE, p.string() + ": " + e.what());
    }
}

void Store::write_stamp(const std::string& stage, const std::string& hash, const Json& details) const {
    Json j = details;
    j["stage"] = stage;
    j["config_hash"] = hash;
    write_text(stamp_path(stage), j.dump(2) + "\n");
}

void Store::write_segment_index(const std::vector<SegmentEntry>& entries, const std::string& hash) const {
    std::string out = "# config_hash: " + hash + "\nid,source_id,start_sample,label,rate\n";
    for (const auto& e : entries) {
        if (e.source_id.find_first_of(",\n\r#") != std::string::npos) {
            fail(EEGTDA_ERR_CONFIG, "source id '" + e.source_id + "' may not contain ',', '#' or line breaks");
        }
        out += std::to_string(e.id) + "," + e.source_id + "," + std::to_string(e.start_sample) + "," +
               label_name(e.label) + "," + format_number(e.rate) + "\n";
    }
    write_text(segment_index(), out);
}

std::vector<SegmentEntry> Store::read_segment_index(const std::string& expected_hash) const {
    const fs::path path = segment_index();
    require_hash(path, expected_hash);
    std::ifstream in(path);
    std::string line;
    bool header = false;
    std::size_t line_no = 0;
    std::vector<SegmentEntry> entries;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        const auto cells = split_csv(line);
        SegmentEntry e;
        try {
            if (cells.size() != 5) throw std::invalid_argument("column count");
            e.id = std::stoul(cells[0]);
            e.source_id = cells[1];
            e.start_sample = std::stoul(cells[2]);
            e.label = parse_label(cells[3], path);
            e.rate = std::stod(cells[4]);
        } catch (const std::logic_error&) {
            fail(EEGTDA_ERR_PARSE, path.string() + ":" + std::to_string(line_no) + ": malformed index row");
        }
        if (e.id != entries.size()) fail(EEGTDA_ERR_PARSE, path.string() + ": segment ids are not consecutive");
        entries.push_back(std::move(e));
    }
    return entries;
}

bool begin_stage(const Store& store, const std::string& stage, const std::string& hash,
                 const std::string& prereq_stage, const std::string& prereq_hash, bool force) {
    if (!prereq_stage.empty()) {
        const auto pre = store.stamp(prereq_stage);
        if (!pre) {
            fail(EEGTDA_ERR_NOT_FOUND, stage + " needs the " + prereq_stage + " stage; run '" + prereq_stage +
                                           "' first (store: " + store.root().string() + ")");
        }
        const std::string found = pre->value("config_hash", "");
        if (found != prereq_hash) {
            fail(EEGTDA_ERR_HASH_MISMATCH, "the " + prereq_stage + " outputs were built with config hash " + found +
                                               " but the current config expects " + prereq_hash + "; rerun '" +
                                               prereq_stage + " --force' before " + stage);
        }
    }
    if (const auto own = store.stamp(stage)) {
        const std::string found = own->value("config_hash", "");
        if (found == hash && !force) {
            std::cout << stage << ": up to date (config hash " << hash << ")\n";
            return false;
        }
        if (found != hash && !force) {
            fail(EEGTDA_ERR_HASH_MISMATCH, "the existing " + stage + " outputs were built with config hash " + found +
                                               " but the current config gives " + hash +
                                               "; pass --force to rebuild them");
        }
    }
    std::error_code ec;
    fs::remove(store.root() / "stages" / (stage + ".json"), ec);
    for (const auto& p : store.outputs(stage)) {
        fs::remove_all(p, ec);
        if (ec) fail(EEGTDA_ERR_IO, "cannot remove " + p.string() + ": " + ec.message());
    }
    return true;
}

void write_text(const fs::path& path, const std::string& contents) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(EEGTDA_ERR_IO, "cannot write " + path.string());
    out << contents;
    if (!out) fail(EEGTDA_ERR_IO, "error writing " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(EEGTDA_ERR_IO, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cli
