#ifndef CLONEFORGE_CLONEFORGE_HPP
#define CLONEFORGE_CLONEFORGE_HPP

#include "cloneforge/config.hpp"
#include "cloneforge/table.hpp"
#include "cloneforge/families.hpp"
#include "cloneforge/fourier.hpp"
#include "cloneforge/pps.hpp"
#include "cloneforge/membership.hpp"
#include "cloneforge/circuits.hpp"
#include "cloneforge/ising_lab.hpp"

#endif
