#include "anysyn/opt.hpp"

namespace anysyn
{

PassReport optimize_by_name( Network& net, PassConfig const& cfg )
{
  PassReport rep;
  bool found = false;
  for_each_builtin_cost( [&]<typename C>() {
    if ( cfg.cost_name == C::name )
    {
      rep = optimize<C>( net, cfg );
      found = true;
    }
  } );
  if ( !found )
  {
    std::string names;
    for ( auto const& n : cost_names() )
    {
      names += names.empty() ? n : ", " + n;
    }
    throw std::invalid_argument( "unknown cost function '" + cfg.cost_name +
                                 "'; registered: " + names );
  }
  return rep;
}

PassReport optimize_pass_by_name( Network& net, PassConfig const& cfg )
{
  PassReport rep;
  bool found = false;
  for_each_builtin_cost( [&]<typename C>() {
    if ( cfg.cost_name == C::name )
    {
      rep = optimize_pass<C>( net, cfg );
      found = true;
    }
  } );
  if ( !found )
  {
    throw std::invalid_argument( "unknown cost function '" + cfg.cost_name + "'" );
  }
  return rep;
}

} // namespace anysyn
