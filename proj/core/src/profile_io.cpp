#include "ballotbox/profile_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ballotbox {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long long parse_int(const std::string& tok, int line, const char* what) {
    long long value = 0;
    const std::string t = trim(tok);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec == std::errc::result_out_of_range) throw DataError(std::string(what) + " overflow", line);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw DataError(std::string("malformed ") + what + " '" + tok + "'", line);
    return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

Profile parse_profile(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    int m = -1;
    BallotKind kind = BallotKind::Ranked;
    std::vector<std::string> names;
    std::vector<char> name_seen;
    std::vector<BallotEntry> entries;
    enum { Header, Candidates, Ballots } state = Header;
    int names_read = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (state == Header) {
            std::istringstream ls(line);
            std::string word, kind_word;
            ls >> word;
            if (word != "election") throw DataError("expected 'election <m> <ranked|approval>'", line_no);
            long long mm = 0;
            if (!(ls >> mm >> kind_word)) throw DataError("expected 'election <m> <ranked|approval>'", line_no);
            if (mm < 1 || mm > 1'000'000) throw DataError("bad candidate count", line_no);
            if (kind_word == "ranked") kind = BallotKind::Ranked;
            else if (kind_word == "approval") kind = BallotKind::Approval;
            else throw DataError("kind must be 'ranked' or 'approval'", line_no);
            m = static_cast<int>(mm);
            names.assign(static_cast<size_t>(m), "");
            name_seen.assign(static_cast<size_t>(m), 0);
            state = Candidates;
            continue;
        }

        if (state == Candidates) {
            std::istringstream ls(line);
            std::string word;
            ls >> word;
            if (word == "candidate") {
                std::string id_tok;
                ls >> id_tok;
                const long long id = parse_int(id_tok, line_no, "candidate id");
                if (id < 0 || id >= m) throw DataError("unknown candidate id " + std::to_string(id), line_no);
                if (name_seen[static_cast<size_t>(id)])
                    throw DataError("duplicate candidate id " + std::to_string(id), line_no);
                std::string name;
                std::getline(ls, name);
                name = trim(name);
                if (name.empty()) throw DataError("candidate needs a name", line_no);
                names[static_cast<size_t>(id)] = name;
                name_seen[static_cast<size_t>(id)] = 1;
                ++names_read;
                continue;
            }
            if (word == "ballots") {
                if (names_read != m) throw DataError("expected " + std::to_string(m) + " candidate lines", line_no);
                state = Ballots;
                continue;
            }
            throw DataError("expected 'candidate' or 'ballots'", line_no);
        }

        // ballots section: "<count>: <ballot>"
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw DataError("expected '<count>: <ballot>'", line_no);
        const long long count = parse_int(line.substr(0, colon), line_no, "count");
        if (count < 1) throw DataError("count must be >= 1", line_no);
        std::string body = trim(line.substr(colon + 1));
        Ballot ballot;
        if (kind == BallotKind::Ranked) {
            if (body.find('{') != std::string::npos) throw DataError("approval ballot in ranked profile", line_no);
            for (const std::string& tok : split(body, '>')) {
                const long long c = parse_int(tok, line_no, "candidate id");
                if (c < 0 || c >= m) throw DataError("unknown candidate id " + std::to_string(c), line_no);
                ballot.seq.push_back(static_cast<CandidateId>(c));
            }
            std::vector<char> seen(static_cast<size_t>(m), 0);
            for (CandidateId c : ballot.seq) {
                if (seen[static_cast<size_t>(c)])
                    throw DataError("duplicate candidate " + std::to_string(c) + " in ranking", line_no);
                seen[static_cast<size_t>(c)] = 1;
            }
            if (static_cast<int>(ballot.seq.size()) != m)
                throw DataError("ranking must list all " + std::to_string(m) + " candidates", line_no);
        } else {
            if (body.size() < 2 || body.front() != '{' || body.back() != '}')
                throw DataError("approval ballot must be {i,j,...} or {}", line_no);
            const std::string inner = trim(body.substr(1, body.size() - 2));
            if (!inner.empty()) {
                std::vector<char> seen(static_cast<size_t>(m), 0);
                for (const std::string& tok : split(inner, ',')) {
                    const long long c = parse_int(tok, line_no, "candidate id");
                    if (c < 0 || c >= m) throw DataError("unknown candidate id " + std::to_string(c), line_no);
                    if (seen[static_cast<size_t>(c)])
                        throw DataError("duplicate candidate " + std::to_string(c) + " in approval set", line_no);
                    seen[static_cast<size_t>(c)] = 1;
                    ballot.seq.push_back(static_cast<CandidateId>(c));
                }
                std::sort(ballot.seq.begin(), ballot.seq.end());
            }
        }
        entries.push_back(BallotEntry{std::move(ballot), count});
    }

    if (m < 0) throw DataError("missing 'election' header");
    if (state != Ballots) throw DataError("missing 'ballots' section");
    if (entries.empty()) throw DataError("no ballots");
    try {
        return Profile(m, kind, std::move(entries), std::move(names));
    } catch (const DataError& e) {
        throw DataError(std::string("invalid profile: ") + e.what());
    }
}

std::string write_profile(const Profile& profile) {
    std::ostringstream out;
    out << "election " << profile.m() << " "
        << (profile.kind() == BallotKind::Ranked ? "ranked" : "approval") << "\n";
    for (int c = 0; c < profile.m(); ++c) out << "candidate " << c << " " << profile.name(c) << "\n";
    out << "ballots\n";
    for (const auto& e : profile.entries()) {
        out << e.count << ": ";
        if (profile.kind() == BallotKind::Ranked) {
            for (size_t i = 0; i < e.ballot.seq.size(); ++i) {
                if (i) out << ">";
                out << e.ballot.seq[i];
            }
        } else {
            out << "{";
            for (size_t i = 0; i < e.ballot.seq.size(); ++i) {
                if (i) out << ",";
                out << e.ballot.seq[i];
            }
            out << "}";
        }
        out << "\n";
    }
    return out.str();
}

Profile read_profile_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open profile file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_profile(buffer.str());
}

void write_profile_file(const Profile& profile, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write profile file '" + path + "'");
    out << write_profile(profile);
}

std::string write_family_files(const AdversarialFamily& family, const std::string& directory) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    const char* stem = family.type == AdversarialFamily::Type::KApproval ? "kapproval"
                       : family.type == AdversarialFamily::Type::Borda   ? "borda"
                                                                         : "bucklin";
    std::ostringstream manifest;
    manifest << "family " << stem << "\n";
    manifest << "m " << family.m << "\n";
    if (family.k > 0) manifest << "k " << family.k << "\n";
    manifest << "epsilon " << rational_to_string(family.epsilon) << "\n";
    manifest << "n " << family.n << "\n";
    for (size_t i = 0; i < family.profiles.size(); ++i) {
        const std::string file = std::string(stem) + "_member_" + std::to_string(i) + ".elect";
        write_profile_file(family.profiles[i], (fs::path(directory) / file).string());
        manifest << "member " << i << " " << file << " winner " << family.intended_winners[i] << "\n";
    }
    const std::string manifest_path = (fs::path(directory) / "manifest").string();
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw DataError("cannot write manifest '" + manifest_path + "'");
    out << manifest.str();
    return manifest_path;
}

FamilyFiles read_family_files(const std::string& directory) {
    namespace fs = std::filesystem;
    const std::string manifest_path = (fs::path(directory) / "manifest").string();
    std::ifstream in(manifest_path);
    if (!in) throw DataError("cannot open manifest '" + manifest_path + "'");
    FamilyFiles out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word != "member") continue;
        long long idx = 0;
        std::string file, winner_word;
        long long winner = -1;
        if (!(ls >> idx >> file >> winner_word >> winner) || winner_word != "winner")
            throw DataError("malformed member line", line_no);
        out.profiles.push_back(read_profile_file((fs::path(directory) / file).string()));
        out.intended_winners.push_back(static_cast<CandidateId>(winner));
    }
    if (out.profiles.empty()) throw DataError("manifest lists no members");
    return out;
}

} // namespace ballotbox
