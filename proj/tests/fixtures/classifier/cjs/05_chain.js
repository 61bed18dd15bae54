var api = module.exports = {};
api.version = "1.0.0";
