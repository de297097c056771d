// Copyright 2026 The nhqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include <gtest/gtest.h>

#include "nhqc/common.hpp"
#include "nhqc/schedule_io.hpp"

namespace {

using namespace nhqc;

const double kCeiling = units::mhz_to_rad_per_s(10.0);

void expect_same(const PulseSchedule& a, const PulseSchedule& b) {
  EXPECT_EQ(a.scheme().kind, b.scheme().kind);
  EXPECT_EQ(a.scheme().k, b.scheme().k);
  EXPECT_EQ(a.gate.gamma, b.gate.gamma);
  EXPECT_EQ(a.gate.theta, b.gate.theta);
  EXPECT_EQ(a.gate.phi, b.gate.phi);
  EXPECT_EQ(a.drive.theta, b.drive.theta);
  EXPECT_NEAR(a.tau, b.tau, 1e-15 * a.tau);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_NEAR(a.samples[i].t, b.samples[i].t, 1e-15 * a.tau);
    EXPECT_EQ(a.samples[i].omega, b.samples[i].omega);
    EXPECT_EQ(a.samples[i].delta, b.samples[i].delta);
    EXPECT_EQ(a.samples[i].xi, b.samples[i].xi);
  }
}

TEST(ScheduleCsv, RoundTripsEveryScheme) {
  for (const auto& s : {synth_circular({kPi / 4, 0.3, 1.2}, 5.0, kCeiling, 301),
                        synth_oss({kPi / 2, 0, 0}, kCeiling, 301),
                        synth_snhqc({kPi / 3, 0, 0}, kCeiling, 301),
                        synth_square({kPi, kPi / 2, 0}, kCeiling, 301)}) {
    std::stringstream buf;
    write_schedule_csv(buf, s);
    expect_same(s, read_schedule_csv(buf));
  }
}

TEST(ScheduleCsv, HeaderFormat) {
  std::stringstream buf;
  write_schedule_csv(buf, synth_square({kPi, 0, 0}, kCeiling, 101));
  std::string meta, header;
  std::getline(buf, meta);
  std::getline(buf, header);
  EXPECT_EQ(meta.rfind("# scheme=square, gamma=", 0), 0u) << meta;
  EXPECT_NE(meta.find("k=NA"), std::string::npos);
  EXPECT_NE(meta.find("tau_ns=50"), std::string::npos);
  EXPECT_EQ(header, "t_ns,omega_rad_per_s,delta_rad_per_s,xi_rad");
}

TEST(ScheduleCsv, RejectsMalformedInput) {
  const char* bad[] = {
      "",
      "t_ns,omega_rad_per_s,delta_rad_per_s,xi_rad\n0,0,0,0\n",
      "# scheme=spiral, gamma=1, theta=0, phi=0, k=NA, tau_ns=10\n"
      "t_ns,omega_rad_per_s,delta_rad_per_s,xi_rad\n0,0,0,0\n",
      "# scheme=square, gamma=1, theta=0, phi=0, k=NA, tau_ns=10\n"
      "t_ns,omega_rad_per_s,delta_rad_per_s,xi_rad\n0,0,zero,0\n",
      "# scheme=square, gamma=1, theta=0, phi=0, k=NA, tau_ns=10\n"
      "t_ns,omega_rad_per_s,delta_rad_per_s,xi_rad\n5,0,0,0\n1,0,0,0\n",
  };
  for (const char* text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(read_schedule_csv(in), DomainError) << text;
  }
}

}  // namespace
