#pragma once

#include "stegpat/bits.hpp"
#include "stegpat/catalog/catalog.hpp"
#include "stegpat/catalog/catalog_io.hpp"
#include "stegpat/catalog/seed.hpp"
#include "stegpat/covers/cover_io.hpp"
#include "stegpat/covers/enumerate.hpp"
#include "stegpat/embed/codec.hpp"
#include "stegpat/embed/lack.hpp"
#include "stegpat/netsim/indirect.hpp"
#include "stegpat/netsim/netsim_io.hpp"
#include "stegpat/warden.hpp"
