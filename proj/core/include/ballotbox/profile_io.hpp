#pragma once

#include "ballotbox/adversary.hpp"
#include "ballotbox/profile.hpp"

#include <string>

namespace ballotbox {

// Line-oriented profile format ('#' starts a comment, blank lines ignored):
//
//   election <m> <ranked|approval>
//   candidate <id> <name>            (one line per candidate)
//   ballots
//   <count>: <i1>><i2>>...           (ranked)
//   <count>: {i1,i2,...}             (approval; {} allowed)
//
// parse(write(p)) == p bit-exactly; write emits entries in canonical order.
Profile parse_profile(const std::string& text);
std::string write_profile(const Profile& profile);

Profile read_profile_file(const std::string& path);
void write_profile_file(const Profile& profile, const std::string& path);

// Writes one profile file per family member plus a `manifest` file naming the
// intended winners. Returns the manifest path.
std::string write_family_files(const AdversarialFamily& family, const std::string& directory);

struct FamilyFiles {
    std::vector<Profile> profiles;
    std::vector<CandidateId> intended_winners;
};
FamilyFiles read_family_files(const std::string& directory);

} // namespace ballotbox
