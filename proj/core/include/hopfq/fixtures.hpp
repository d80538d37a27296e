#pragma once

#include <map>
#include <string>
#include <vector>

namespace hopfq {
namespace fixtures {

/// Bundled input sets: quiver/action/params JSON per fixture name,
/// bit-exact per release.
std::vector<std::string> names();
bool exists(const std::string& name);
/// filename -> file body (e.g. "quiver.json" -> ...).
std::map<std::string, std::string> files(const std::string& name);

}  // namespace fixtures
}  // namespace hopfq
