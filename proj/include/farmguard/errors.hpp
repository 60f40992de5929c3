#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace farmguard {

// Map document failed validation. `path()` is a JSON-pointer style field path.
class MapError : public std::runtime_error {
 public:
  MapError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Some valid waypoints cannot be reached from a drone's home station.
class ConnectivityError : public std::runtime_error {
 public:
  ConnectivityError(const std::string& what, std::vector<std::size_t> unreachable)
      : std::runtime_error(what), unreachable_(std::move(unreachable)) {}

  // Indices into the WaypointSet.
  const std::vector<std::size_t>& unreachable() const noexcept { return unreachable_; }

 private:
  std::vector<std::size_t> unreachable_;
};

class PlannerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace farmguard
