exports.debug = function() {
  console.log.apply(console, arguments);
};
