#ifndef PLFILTER_IO_HPP
#define PLFILTER_IO_HPP

#include <iosfwd>
#include <string>

#include "plfilter/model.hpp"
#include "plfilter/polytope.hpp"
#include "plfilter/sampler.hpp"
#include "plfilter/transform.hpp"

namespace plf {

/// Shortest 17-significant-digit representation; reloads bit-faithfully.
std::string format_number(double v);

ProblemSpec parse_problem_text(const std::string& text);
ProblemSpec parse_problem_file(const std::string& path);

std::string mode_sum_to_json(const ModeSum& ms);
ModeSum mode_sum_from_json_text(const std::string& text);

std::string slice_volume_to_json(const SliceVolumeFunction& sv);

VolumeModel volume_model_from_json_text(const std::string& text);
VolumeModel volume_model_from_json_file(const std::string& path);

/// Header: beta,T,mean_O,stderr_O,var_O[,cov_ij...]
void write_sweep_csv(std::ostream& os, const SweepData& sweep);
/// Accepts both the sampler sweep header and the transform sweep header
/// (beta,T,logZ,mean_O,var_O); stderr column is optional.
SweepData read_sweep_csv_file(const std::string& path);

/// Header: bin_lo,bin_hi,count,betaF (empty bins print inf).
void write_landau_csv(std::ostream& os, const LandauProfile& prof);

} // namespace plf

#endif // PLFILTER_IO_HPP
